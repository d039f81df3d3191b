"""Finite-shot estimates against theory, with and without depolarization."""
from cudqsd import CoefficientProfile, NoiseModel, estimate, percentage_errors, run_trials, theory_report

c = CoefficientProfile(4, 3, 1.0).coefficients()
t = theory_report(c)
print(f"theory: p_perp={t.p_perp:.5f} P?ME={t.p_me_inconclusive:.5f} R={t.r_theory:.5f}")

for shots in (10**3, 10**4, 10**5, 10**6):
    e = estimate(run_trials(c, NoiseModel(), shots, seed=1), t)
    err = percentage_errors(e, t)
    print(f"{shots:>8} shots: R_est={e.r_vs_theory_ud:.4f}  "
          + "  ".join(f"{k}={v:.3f}%" for k, v in err.items()))

# Depolarization leaks events across arms; p_perp drifts toward 1/2
print()
for gamma in (0.0, 0.02, 0.05, 0.1):
    e = estimate(run_trials(c, NoiseModel(gamma), 10**5, seed=2), t)
    print(f"gamma={gamma:.2f}: p_perp_est={e.p_perp_est:.4f} "
          f"(closed form {(1 - gamma) * t.p_perp + gamma / 2:.4f})  R_est={e.r_vs_theory_ud:.3f}")
