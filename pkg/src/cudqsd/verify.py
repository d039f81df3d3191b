"""Randomized invariant suites behind ``cudqsd verify``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence

import numpy as np

from .discrimination import (ancilla_unitary, apply_kraus, kraus_pair, me_outcome_distribution,
                             project_ancilla, theory_report)
from .oracle import brute_force_report
from .qudit import CoefficientVector, build_symmetric_state, random_coefficients

REPORT_FIELDS = ("p_perp", "p_inc", "p_me_conclusive", "p_me_inconclusive", "p_ud", "p_cud", "r_theory")


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "total": self.total,
                "ok": self.ok, "failures": self.failures}


@dataclass
class VerifyReport:
    suites: List[SuiteResult]
    trials: int
    seed: int

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    def to_dict(self) -> dict:
        return {"trials": self.trials, "seed": self.seed, "ok": self.ok,
                "suites": [s.to_dict() for s in self.suites]}

    def lines(self) -> List[str]:
        out = [f"{'PASS' if s.ok else 'FAIL'} {s.name}: {s.passed}/{s.total}" for s in self.suites]
        for s in self.suites:
            for f in s.failures[:5]:
                out.append(f"  {s.name} failure: {f}")
        return out


def _instance(c: CoefficientVector, **extra) -> dict:
    return {"csq": c.csq.tolist(), "phases": c.phases.tolist(), **extra}


def check_completeness(c, rng, tol=1e-20):
    res = kraus_pair(c).completeness_residual()
    return res < tol, {"residual": res}


def check_delta(c, rng, tol=1e-10):
    k = kraus_pair(c)
    worst = 0.0
    for j in range(c.dim):
        _, out = apply_kraus(k, build_symmetric_state(c, j), "conclusive")
        worst = max(worst, float(np.max(np.abs(me_outcome_distribution(out) - np.eye(c.dim)[j]))))
    return worst <= tol, {"max_deviation": worst}


def check_advantage(c, rng):
    t = theory_report(c)
    ok = t.p_cud >= t.p_ud
    if t.dim_inconclusive > 1 and t.p_inc > 1e-9:
        ok = t.p_cud > t.p_ud
    return ok, {"p_cud": t.p_cud, "p_ud": t.p_ud, "dim_inconclusive": t.dim_inconclusive}


def check_path_equivalence(c, rng, tol=1e-10):
    j = int(rng.integers(c.dim))
    k, u = kraus_pair(c), ancilla_unitary(c)
    psi = build_symmetric_state(c, j)
    for branch, pol in (("conclusive", "v"), ("inconclusive", "h")):
        p1, s1 = apply_kraus(k, psi, branch)
        p2, s2 = project_ancilla(u, psi, pol)
        if abs(p1 - p2) > tol or (s1 is None) != (s2 is None):
            return False, {"j": j, "branch": branch, "p_kraus": p1, "p_ancilla": p2}
        if s1 is not None and not s1.same_ray(s2, tol):
            return False, {"j": j, "branch": branch, "overlap": abs(s1.overlap(s2))}
    return True, {"j": j}


def check_phase_invariance(c, rng, tol=1e-12):
    base = theory_report(c)
    other = theory_report(c.with_phases(rng.uniform(-np.pi, np.pi, size=c.dim)))
    dev = max(abs(getattr(base, f) - getattr(other, f)) for f in REPORT_FIELDS)
    ok = dev <= tol and base.dim_inconclusive == other.dim_inconclusive
    return ok, {"max_deviation": dev}


def check_oracle(c, rng, tol=1e-10):
    t = theory_report(c)
    ref = brute_force_report(c)
    dev = max(abs(getattr(t, f) - ref[f]) for f in REPORT_FIELDS)
    ok = dev <= tol and t.dim_inconclusive == ref["dim_inconclusive"]
    return ok, {"max_deviation": dev}


def run_verification(trials: int = 200, seed: int = 0, dims: Sequence[int] = range(2, 10),
                     completeness_tol: float = 1e-20) -> VerifyReport:
    """Run every suite on ``trials`` random instances spread round-robin over ``dims``."""
    suites: Dict[str, Callable] = {
        "completeness": lambda c, rng: check_completeness(c, rng, completeness_tol),
        "conclusive_delta": check_delta,
        "cud_advantage": check_advantage,
        "path_equivalence": check_path_equivalence,
        "phase_invariance": check_phase_invariance,
        "oracle_equivalence": check_oracle,
    }
    results = {name: SuiteResult(name) for name in suites}
    rng = np.random.default_rng(seed)
    dims = list(dims)
    for t in range(trials):
        c = random_coefficients(dims[t % len(dims)], rng)
        for name, check in suites.items():
            ok, info = check(c, rng)
            r = results[name]
            r.total += 1
            if ok:
                r.passed += 1
            else:
                r.failures.append(_instance(c, trial=t, **info))
    return VerifyReport(list(results.values()), trials, seed)
