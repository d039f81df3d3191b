"""Two realizations of the same filter: a Kraus pair and an ancilla rotation."""
import numpy as np

from cudqsd import (CoefficientVector, ancilla_unitary, apply_kraus, build_symmetric_state, kraus_pair,
                    me_outcome_distribution, project_ancilla)

c = CoefficientVector.from_csq([0.4, 0.3, 0.2, 0.1], phases=[0.0, 0.7, -1.2, 2.5])
k, u = kraus_pair(c), ancilla_unitary(c)
print("completeness residual:", k.completeness_residual())
print("unitary rotation a_n:", np.round(u.a, 6))

for j in range(c.dim):
    psi = build_symmetric_state(c, j)
    p_k, out_k = apply_kraus(k, psi, "conclusive")
    p_u, out_u = project_ancilla(u, psi, "v")  # v port = conclusive
    q = me_outcome_distribution(out_k)
    print(f"j={j}  p_kraus={p_k:.6f}  p_ancilla={p_u:.6f}  same ray={out_k.same_ray(out_u)}  "
          f"ME outcome={int(np.argmax(q))} (prob {q.max():.3f})")

# The h port keeps overlapping states; the Fourier measurement still beats a coin toss
psi = build_symmetric_state(c, 0)
_, left = project_ancilla(u, psi, "h")
print("\ninconclusive ME distribution:", np.round(me_outcome_distribution(left), 4), "vs 1/d =", 1 / c.dim)
