"""Shot-level sampling of the concatenated protocol and intensity-ratio estimators.

Arms are indexed ``0`` (conclusive) and ``1`` (inconclusive); count tensors are
laid out ``N[arm, outcome, input]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple, Union

import numpy as np

from .discrimination import TheoryReport, apply_kraus, kraus_pair, me_outcome_distribution
from .qudit import CoefficientVector, _frozen, build_symmetric_state

CONCLUSIVE, INCONCLUSIVE = 0, 1

SeedLike = Union[int, np.random.SeedSequence]


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing mixture: weight ``gamma`` goes to a state that is diagonal in
    the spatial modes and fully mixed in polarization, so it lands uniformly on
    all ``2d`` detector cells."""

    gamma: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma}")


def branch_distributions(c: CoefficientVector, j: int, noise: NoiseModel = NoiseModel()) -> np.ndarray:
    """Joint probabilities ``P[arm, outcome]`` for input ``|psi_j>``."""
    d = c.dim
    k = kraus_pair(c)
    psi = build_symmetric_state(c, j)
    table = np.zeros((2, d))
    for arm, branch in ((CONCLUSIVE, "conclusive"), (INCONCLUSIVE, "inconclusive")):
        p, out = apply_kraus(k, psi, branch)
        if out is not None:
            table[arm] = p * me_outcome_distribution(out)
    return (1.0 - noise.gamma) * table + noise.gamma / (2 * d)


@dataclass(frozen=True, eq=False)
class CountsTable:
    """Event counts ``N[arm, outcome, input]``.

    Counts may be fractional (expected counts or measured intensities); the
    estimators only use ratios.
    """

    counts: np.ndarray
    shots_per_input: int

    def __post_init__(self):
        counts = np.asarray(self.counts)
        if counts.ndim != 3 or counts.shape[0] != 2 or counts.shape[1] != counts.shape[2]:
            raise ValueError(f"counts must have shape (2, d, d), got {counts.shape}")
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        totals = counts.sum(axis=(0, 1))
        if not np.allclose(totals, self.shots_per_input, rtol=1e-12, atol=0):
            raise ValueError(f"each input column must sum to shots_per_input={self.shots_per_input}")
        object.__setattr__(self, "counts", _frozen(counts))

    @property
    def dim(self) -> int:
        return self.counts.shape[1]

    @classmethod
    def expected(cls, c: CoefficientVector, noise: NoiseModel, shots_per_input: int) -> "CountsTable":
        """The infinite-statistics limit: distributions scaled to counts."""
        tables = np.stack([branch_distributions(c, j, noise) for j in range(c.dim)], axis=-1)
        tables /= tables.sum(axis=(0, 1))
        return cls(tables * shots_per_input, shots_per_input)


def input_streams(seed: SeedLike, d: int) -> List[np.random.Generator]:
    """One independent generator per input state, spawned from ``seed``."""
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in ss.spawn(d)]


def run_trials(c: CoefficientVector, noise: NoiseModel, shots_per_input: int, seed: SeedLike) -> CountsTable:
    """Sample ``shots_per_input`` independent events for every input state.

    Input ``j`` draws from its own stream, so its counts do not depend on how
    many other inputs are simulated or in which order.
    """
    if int(shots_per_input) != shots_per_input or shots_per_input < 1:
        raise ValueError(f"shots_per_input must be a positive integer, got {shots_per_input}")
    shots_per_input = int(shots_per_input)
    d = c.dim
    if isinstance(seed, np.random.SeedSequence):
        # spawning mutates the sequence; copy so repeated calls stay reproducible
        seed = np.random.SeedSequence(seed.entropy, spawn_key=seed.spawn_key)
    counts = np.zeros((2, d, d), dtype=np.int64)
    for j, rng in enumerate(input_streams(seed, d)):
        p = np.clip(branch_distributions(c, j, noise).ravel(), 0.0, None)
        counts[:, :, j] = rng.multinomial(shots_per_input, p / p.sum()).reshape(2, d)
    return CountsTable(counts, shots_per_input)


@dataclass(frozen=True, eq=False)
class EstimateReport:
    p_perp_est: float
    p_me_conclusive_est: float
    p_me_inconclusive_est: float
    p_ud_est: float
    p_cud_est: float
    r_vs_theory_ud: float
    p_perp_per_input: np.ndarray
    conditional: np.ndarray  # P[arm, outcome, input]
    flagged: Tuple[Tuple[int, int], ...] = field(default=())  # (arm, input) with no events

    def to_dict(self, per_input: bool = False) -> dict:
        out = dict(
            p_perp_est=self.p_perp_est,
            p_me_conclusive_est=self.p_me_conclusive_est,
            p_me_inconclusive_est=self.p_me_inconclusive_est,
            p_ud_est=self.p_ud_est,
            p_cud_est=self.p_cud_est,
            r_vs_theory_ud=self.r_vs_theory_ud,
            flagged=[list(f) for f in self.flagged],
        )
        if per_input:
            out["p_perp_per_input"] = self.p_perp_per_input.tolist()
            out["conditional"] = self.conditional.tolist()
        return out


def estimate(counts: CountsTable, theory: TheoryReport) -> EstimateReport:
    """Conditional probabilities and overall figures of merit from counts.

    ``P[l, i, j] = N[l, i, j] / sum_k N[l, k, j]`` and
    ``p_perp_j = sum_i N[0, i, j] / sum_{l,i} N[l, i, j]``. An arm that recorded
    no event for some input gets a uniform conditional and is listed in
    ``flagged``.
    """
    n = np.asarray(counts.counts, dtype=float)
    d = counts.dim
    arm_totals = n.sum(axis=1)  # [arm, input]
    cond = np.empty_like(n)
    flagged = []
    for arm in (CONCLUSIVE, INCONCLUSIVE):
        for j in range(d):
            if arm_totals[arm, j] > 0:
                cond[arm, :, j] = n[arm, :, j] / arm_totals[arm, j]
            else:
                cond[arm, :, j] = 1.0 / d
                flagged.append((arm, j))
    p_perp_j = arm_totals[CONCLUSIVE] / arm_totals.sum(axis=0)
    idx = np.arange(d)
    p_perp = float(p_perp_j.mean())
    p_me_conc = float(cond[CONCLUSIVE, idx, idx].mean())
    p_me_inc = float(cond[INCONCLUSIVE, idx, idx].mean())
    p_ud = p_perp * p_me_conc + (1.0 - p_perp) * (1.0 / d)
    p_cud = p_perp * p_me_conc + (1.0 - p_perp) * p_me_inc
    return EstimateReport(
        p_perp_est=p_perp,
        p_me_conclusive_est=p_me_conc,
        p_me_inconclusive_est=p_me_inc,
        p_ud_est=p_ud,
        p_cud_est=p_cud,
        r_vs_theory_ud=p_cud / theory.p_ud,
        p_perp_per_input=_frozen(p_perp_j),
        conditional=_frozen(cond),
        flagged=tuple(flagged),
    )


def percentage_errors(est: EstimateReport, theory: TheoryReport) -> dict:
    """``100 |q_theory - q_est| / q_theory`` for the three measured probabilities."""
    pairs = {
        "p_perp": (theory.p_perp, est.p_perp_est),
        "p_me_conclusive": (theory.p_me_conclusive, est.p_me_conclusive_est),
        "p_me_inconclusive": (theory.p_me_inconclusive, est.p_me_inconclusive_est),
    }
    out = {}
    for name, (q_th, q_est) in pairs.items():
        if q_th <= 0:
            raise ValueError(f"theory value for {name} must be positive, got {q_th}")
        out[name] = 100.0 * abs(q_th - q_est) / q_th
    return out
