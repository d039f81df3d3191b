"""Optimal unambiguous discrimination of symmetric states and its concatenation
with a minimum-error (Fourier) measurement on the inconclusive branch.

Two realizations of the same pair of Kraus operators live here: the direct
diagonal operators (:func:`kraus_pair` / :func:`apply_kraus`) and a two-level
polarization ancilla rotated mode by mode and then projected
(:func:`ancilla_unitary` / :func:`project_ancilla`).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Literal, Optional, Tuple

import numpy as np

from .qudit import CoefficientVector, StateVector, _frozen

ZERO_BRANCH_TOL = 1e-15
MULTIPLICITY_TOL = 1e-9

Branch = Literal["conclusive", "inconclusive"]
Polarization = Literal["h", "v"]


@dataclass(frozen=True, eq=False)
class KrausPair:
    """Diagonals of the conclusive and inconclusive Kraus operators."""

    conclusive_diag: np.ndarray
    inconclusive_diag: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "conclusive_diag", _frozen(np.asarray(self.conclusive_diag, dtype=complex)))
        object.__setattr__(self, "inconclusive_diag", _frozen(np.asarray(self.inconclusive_diag, dtype=complex)))

    @property
    def dim(self) -> int:
        return self.conclusive_diag.size

    def operator(self, branch: Branch) -> np.ndarray:
        return np.diag(self._diag(branch))

    def completeness_residual(self) -> float:
        """``sum_n (|A_perp_nn|^2 + |A_?_nn|^2 - 1)^2``; zero for a valid pair."""
        s = np.abs(self.conclusive_diag) ** 2 + np.abs(self.inconclusive_diag) ** 2
        return float(np.sum((s - 1.0) ** 2))

    def _diag(self, branch: Branch) -> np.ndarray:
        if branch == "conclusive":
            return self.conclusive_diag
        if branch == "inconclusive":
            return self.inconclusive_diag
        raise ValueError(f"branch must be 'conclusive' or 'inconclusive', got {branch!r}")


def kraus_pair(c: CoefficientVector) -> KrausPair:
    ratio = c.c_min / c.magnitudes
    dephase = np.exp(-1j * c.phases)
    # 1 - ratio**2 is exactly 0 at c_min; clip guards against negative round-off
    return KrausPair(ratio * dephase, np.sqrt(np.clip(1.0 - ratio**2, 0.0, None)) * dephase)


def _branch_output(amps: np.ndarray) -> Tuple[float, Optional[StateVector]]:
    p = float(np.vdot(amps, amps).real)
    if p < ZERO_BRANCH_TOL:
        return p, None
    return p, StateVector(amps / np.sqrt(p))


def apply_kraus(k: KrausPair, psi: StateVector, branch: Branch) -> Tuple[float, Optional[StateVector]]:
    """Apply one Kraus branch to ``psi``.

    Returns:
        ``(p, state)`` with ``p = ||A psi||^2`` and the normalized output, or
        ``(p, None)`` when the branch has vanishing probability.
    """
    if psi.dim != k.dim:
        raise ValueError(f"dimension mismatch: Kraus pair d={k.dim}, state d={psi.dim}")
    return _branch_output(k._diag(branch) * psi.amps)


def me_outcome_distribution(psi: StateVector) -> np.ndarray:
    """Born probabilities of the Fourier-basis projectors ``F|n><n|F^-1``.

    ``<n|F^-1|psi> = sum_k omega**(-nk) psi_k / sqrt(d)``, which is exactly the
    unnormalized forward FFT divided by ``sqrt(d)``.
    """
    amps = np.fft.fft(psi.amps) / np.sqrt(psi.dim)
    return np.abs(amps) ** 2


def inconclusive_space_dim(c: CoefficientVector) -> int:
    """``d - mu(c_min)``, with mu the multiplicity of the smallest magnitude."""
    mu = int(np.count_nonzero(np.abs(c.magnitudes - c.c_min) < MULTIPLICITY_TOL))
    return c.dim - mu


def p_me_inconclusive(c: CoefficientVector) -> float:
    """Success probability of the Fourier measurement on the inconclusive outputs.

    Closed form ``[sum_k sqrt(|c_k|^2 - c_min^2)]^2 / (d p_?)``. For a vanishing
    inconclusive branch (uniform coefficients) the random-guess value ``1/d``
    is returned.
    """
    d = c.dim
    csq = c.csq
    # subtract within one array: a scalar c_min**2 can round differently from csq.min()
    excess = np.clip(csq - csq.min(), 0.0, None)
    p_inc = float(excess.sum())
    if p_inc < ZERO_BRANCH_TOL or np.count_nonzero(excess) <= 1:
        # a single surviving mode makes every inconclusive output the same ray
        return 1.0 / d
    value = float(np.sum(np.sqrt(excess)) ** 2 / (d * p_inc))
    # 1/d is a strict lower bound; only round-off can go below it
    return max(value, 1.0 / d)


@dataclass(frozen=True)
class TheoryReport:
    p_perp: float
    p_inc: float
    p_me_conclusive: float
    p_me_inconclusive: float
    p_ud: float
    p_cud: float
    r_theory: float
    dim_inconclusive: int

    def to_dict(self) -> dict:
        return asdict(self)


def theory_report(c: CoefficientVector) -> TheoryReport:
    d = c.dim
    p_perp = min(d * c.c_min**2, 1.0)
    p_inc = 1.0 - p_perp
    dim_inc = inconclusive_space_dim(c)
    p_me_inc = p_me_inconclusive(c)
    p_me_conc = 1.0
    guess = 1.0 / d
    # same float expression on both sides so degenerate cases give R == 1 exactly
    p_ud = p_perp * p_me_conc + p_inc * guess
    p_cud = p_perp * p_me_conc + p_inc * p_me_inc
    return TheoryReport(
        p_perp=p_perp,
        p_inc=p_inc,
        p_me_conclusive=p_me_conc,
        p_me_inconclusive=p_me_inc,
        p_ud=p_ud,
        p_cud=p_cud,
        r_theory=p_cud / p_ud,
        dim_inconclusive=dim_inc,
    )


@dataclass(frozen=True, eq=False)
class AncillaCoupledUnitary:
    """Per-mode polarization rotations ``e^{i phi_n} [[a_n, b_n], [-b_n, a_n]]``.

    The 2x2 blocks act on the ancilla basis ``h = (1, 0)``, ``v = (0, 1)``.
    """

    phase: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        for name in ("phase", "a", "b"):
            object.__setattr__(self, name, _frozen(np.asarray(getattr(self, name), dtype=float)))
        if not (self.phase.shape == self.a.shape == self.b.shape):
            raise ValueError("phase, a and b must have the same length")
        if np.any(self.a <= 0) or np.any(self.a > 1 + 1e-12):
            raise ValueError("polarization amplitudes a_n must lie in (0, 1]")
        if np.any(np.abs(self.a**2 + self.b**2 - 1.0) > 1e-12):
            raise ValueError("a_n^2 + b_n^2 must equal 1")

    @property
    def dim(self) -> int:
        return self.a.size

    def block(self, n: int) -> np.ndarray:
        a, b = self.a[n], self.b[n]
        return np.exp(1j * self.phase[n]) * np.array([[a, b], [-b, a]])

    def matrix(self) -> np.ndarray:
        """Full ``2d x 2d`` operator on ``|n> (x) |pol>`` (mode-major ordering)."""
        d = self.dim
        u = np.zeros((2 * d, 2 * d), dtype=complex)
        for n in range(d):
            u[2 * n:2 * n + 2, 2 * n:2 * n + 2] = self.block(n)
        return u


def ancilla_unitary(c: CoefficientVector) -> AncillaCoupledUnitary:
    a = c.c_min / c.magnitudes
    return AncillaCoupledUnitary(phase=-c.phases, a=a, b=np.sqrt(np.clip(1.0 - a**2, 0.0, None)))


_POL_INDEX = {"h": 0, "v": 1}


def project_ancilla(u: AncillaCoupledUnitary, psi: StateVector,
                    pol: Polarization) -> Tuple[float, Optional[StateVector]]:
    """Couple ``psi`` to an ancilla prepared in ``|v>``, apply ``u``, project onto ``|pol>``.

    ``v`` is the conclusive port and ``h`` the inconclusive one.
    """
    if psi.dim != u.dim:
        raise ValueError(f"dimension mismatch: unitary d={u.dim}, state d={psi.dim}")
    if pol not in _POL_INDEX:
        raise ValueError(f"pol must be 'h' or 'v', got {pol!r}")
    joint = np.kron(psi.amps, np.array([0.0, 1.0]))
    out = (u.matrix() @ joint).reshape(u.dim, 2)
    return _branch_output(out[:, _POL_INDEX[pol]])
