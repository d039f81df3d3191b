"""Ideal figures of merit for a few coefficient vectors."""
import numpy as np

from cudqsd import CoefficientProfile, CoefficientVector, theory_report

# A lopsided d=4 set: one quarter of the inconclusive mass is still useful
c = CoefficientVector.from_csq([0.4, 0.3, 0.2, 0.1])
t = theory_report(c)
print("d=4 worked set")
for k, v in t.to_dict().items():
    print(f"  {k:18s} {v}")

# Equal magnitudes are orthogonal states, nothing to gain
print("\nuniform d=5:", theory_report(CoefficientVector.uniform(5)).r_theory)

# Only one mode above c_min: the inconclusive outputs all coincide
print("single excess mode:", theory_report(CoefficientVector.from_csq([0.5, 0.25, 0.25])).r_theory)

# The modulator profile along its steepest edge
print("\nR along xi' for j0 = d-1")
for d in (4, 9):
    rs = [theory_report(CoefficientProfile(d, d - 1, xp).coefficients()).r_theory
          for xp in np.linspace(0.1, 1.0, 10)]
    print(f"  d={d}: " + " ".join(f"{r:.3f}" for r in rs))
