"""Symmetric qudit states, coefficient families and the discrete Fourier transform.

A symmetric family is generated from one coefficient vector ``c`` as

.. math::
    |\\psi_j\\rangle = \\sum_k c_k \\omega^{jk} |k\\rangle, \\qquad \\omega = e^{2\\pi i/d}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

NORM_TOL = 1e-12
UNITARY_TOL = 1e-10
MIN_DIM = 2
MAX_DIM = 64
DEFAULT_FLOOR = 0.12


def _check_dim(d: int) -> int:
    if int(d) != d or not MIN_DIM <= d <= MAX_DIM:
        raise ValueError(f"dimension must be an integer in [{MIN_DIM}, {MAX_DIM}], got {d}")
    return int(d)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


def omega(d: int) -> complex:
    """Primitive d-th root of unity ``exp(2*pi*i/d)``."""
    return np.exp(2j * np.pi / d)


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """Amplitudes ``c_0..c_{d-1}`` of a symmetric-state family.

    Magnitudes and phases are stored separately so that equal magnitudes stay
    bitwise equal whatever phases are attached to them; degeneracies of
    ``c_min`` are therefore detected exactly.
    """

    magnitudes: np.ndarray
    phases: np.ndarray

    def __post_init__(self):
        mags = np.asarray(self.magnitudes, dtype=float).ravel()
        phases = np.asarray(self.phases, dtype=float).ravel()
        _check_dim(mags.size)
        if phases.shape != mags.shape:
            raise ValueError("magnitudes and phases must have the same length")
        if not np.all(np.isfinite(mags)) or not np.all(np.isfinite(phases)):
            raise ValueError("coefficients must be finite")
        if np.any(mags <= 0):
            raise ValueError("every coefficient magnitude |c_k| must be nonzero")
        norm2 = float(np.sum(mags**2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"coefficients must be normalized: sum |c_k|^2 = {norm2!r}")
        object.__setattr__(self, "magnitudes", _frozen(mags / np.sqrt(norm2)))
        object.__setattr__(self, "phases", _frozen(phases))

    @classmethod
    def from_csq(cls, csq: Sequence[float], phases: Optional[Sequence[float]] = None) -> "CoefficientVector":
        """Build from squared magnitudes ``|c_k|^2`` (phases default to zero)."""
        csq = np.asarray(csq, dtype=float)
        if np.any(csq < 0):
            raise ValueError("squared magnitudes must be nonnegative")
        if phases is None:
            phases = np.zeros_like(csq)
        return cls(np.sqrt(csq), phases)

    @classmethod
    def from_amps(cls, amps: Sequence[complex]) -> "CoefficientVector":
        amps = np.asarray(amps, dtype=complex)
        return cls(np.abs(amps), np.angle(amps))

    @classmethod
    def uniform(cls, d: int) -> "CoefficientVector":
        d = _check_dim(d)
        return cls(np.full(d, 1 / np.sqrt(d)), np.zeros(d))

    @property
    def dim(self) -> int:
        return self.magnitudes.size

    @property
    def amps(self) -> np.ndarray:
        return self.magnitudes * np.exp(1j * self.phases)

    @property
    def csq(self) -> np.ndarray:
        return self.magnitudes**2

    @property
    def c_min(self) -> float:
        return float(self.magnitudes.min())

    def with_phases(self, phases: Sequence[float]) -> "CoefficientVector":
        return CoefficientVector(self.magnitudes, phases)

    def __repr__(self):
        return f"CoefficientVector(csq={self.csq.tolist()!r}, phases={self.phases.tolist()!r})"


@dataclass(frozen=True, eq=False)
class StateVector:
    """A normalized pure state in the computational basis."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex).ravel()
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state must have unit norm, got {norm!r}")
        object.__setattr__(self, "amps", _frozen(amps))

    @classmethod
    def normalized(cls, amps) -> "StateVector":
        amps = np.asarray(amps, dtype=complex)
        return cls(amps / np.linalg.norm(amps))

    @classmethod
    def basis(cls, d: int, k: int) -> "StateVector":
        e = np.zeros(d, dtype=complex)
        e[k] = 1
        return cls(e)

    @property
    def dim(self) -> int:
        return self.amps.size

    def overlap(self, other: "StateVector") -> complex:
        """``<self|other>``."""
        return complex(np.vdot(self.amps, other.amps))

    def same_ray(self, other: "StateVector", tol: float = UNITARY_TOL) -> bool:
        """True if the two states agree up to a global phase."""
        return self.dim == other.dim and abs(self.overlap(other)) >= 1 - tol


@dataclass(frozen=True)
class CoefficientProfile:
    """Two-parameter ``(j0, xi)`` family of coefficient magnitudes.

    ``xi_prime`` is the fraction of the largest admissible suppression
    ``xi_max``, itself fixed by the amplitude ``floor``.
    """

    dim: int
    j0: int
    xi_prime: float
    floor: float = DEFAULT_FLOOR

    def __post_init__(self):
        _check_dim(self.dim)
        if int(self.j0) != self.j0 or not 1 <= self.j0 <= self.dim - 1:
            raise ValueError(f"j0 must be in [1, {self.dim - 1}], got {self.j0}")
        if not 0.0 <= self.xi_prime <= 1.0:
            raise ValueError(f"xi_prime must be in [0, 1], got {self.xi_prime}")
        if not 0.0 < self.floor < 1.0:
            raise ValueError(f"floor must be in (0, 1), got {self.floor}")

    @property
    def xi_max(self) -> float:
        return compute_xi_max(self.dim, self.j0, self.floor)

    @property
    def xi(self) -> float:
        return self.xi_prime * self.xi_max

    def coefficients(self, phases=None) -> CoefficientVector:
        return coefficients_from_profile(self, phases)


def compute_xi_max(d: int, j0: int, floor: float = DEFAULT_FLOOR) -> float:
    """Largest ``xi`` keeping every unnormalized weight at or above ``floor``.

    The weight of the last mode, ``1 - xi**(1/d)``, is the smallest one for
    any ``j0``, so ``xi_max = (1 - floor)**d``.
    """
    _check_dim(d)
    if not 1 <= j0 <= d - 1:
        raise ValueError(f"j0 must be in [1, {d - 1}], got {j0}")
    if not 0.0 < floor < 1.0:
        raise ValueError(f"floor must be in (0, 1), got {floor}")
    return (1.0 - floor) ** d


def profile_weights(d: int, j0: int, xi: float) -> np.ndarray:
    """Unnormalized ``|c_n|^2`` of the ``(j0, xi)`` family."""
    d = _check_dim(d)
    if not 1 <= j0 <= d - 1:
        raise ValueError(f"j0 must be in [1, {d - 1}], got {j0}")
    if xi < 0:
        raise ValueError(f"xi must be nonnegative, got {xi}")
    n = np.arange(d)
    w = np.ones(d)
    tail = n >= j0
    w[tail] = 1.0 - (xi * (n[tail] - j0 + 1) / (d - j0)) ** (1.0 / d)
    if np.any(w <= 0):
        raise ValueError(f"xi={xi} suppresses a coefficient to zero (d={d}, j0={j0})")
    return w


def coefficients_from_profile(profile: CoefficientProfile, phases=None) -> CoefficientVector:
    w = profile_weights(profile.dim, profile.j0, profile.xi)
    return CoefficientVector.from_csq(w / w.sum(), phases)


def build_symmetric_state(c: CoefficientVector, j: int) -> StateVector:
    """State ``|psi_j>`` with amplitudes ``c_k * omega**(j*k)``."""
    d = c.dim
    if int(j) != j or not 0 <= j < d:
        raise IndexError(f"state index must be in [0, {d - 1}], got {j}")
    k = np.arange(d)
    # reduce the exponent mod d before exponentiating to keep phases exact
    return StateVector(c.amps * np.exp(2j * np.pi * ((j * k) % d) / d))


def fourier_matrix(d: int) -> np.ndarray:
    """Unitary DFT matrix with entries ``omega**(j*k) / sqrt(d)``."""
    d = _check_dim(d)
    jk = np.outer(np.arange(d), np.arange(d)) % d
    return np.exp(2j * np.pi * jk / d) / np.sqrt(d)


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    return u.ndim == 2 and u.shape[0] == u.shape[1] and np.linalg.norm(u.conj().T @ u - np.eye(len(u))) <= tol


def gram_overlap(c: CoefficientVector, j: int, k: int) -> complex:
    """``<psi_j|psi_k> = sum_n |c_n|^2 omega**((k-j)*n)``."""
    d = c.dim
    for idx in (j, k):
        if not 0 <= idx < d:
            raise IndexError(f"state index must be in [0, {d - 1}], got {idx}")
    n = np.arange(d)
    return complex(np.sum(c.csq * np.exp(2j * np.pi * (((k - j) * n) % d) / d)))


def gram_matrix(c: CoefficientVector) -> np.ndarray:
    d = c.dim
    return np.array([[gram_overlap(c, j, k) for k in range(d)] for j in range(d)])


def random_coefficients(d: int, rng: np.random.Generator, floor: float = 0.0,
                        random_phases: bool = True) -> CoefficientVector:
    """Random valid coefficients with unnormalized weights drawn from U(floor, 1).

    With ``floor > 0`` the ratio ``min |c|^2 / max |c|^2`` is at least ``floor``,
    mimicking a modulator that cannot suppress a mode completely.
    """
    d = _check_dim(d)
    w = rng.uniform(floor, 1.0, size=d)
    while np.any(w <= 0):  # U(0, 1) can return exactly 0
        w = rng.uniform(floor, 1.0, size=d)
    phases = rng.uniform(-np.pi, np.pi, size=d) if random_phases else None
    return CoefficientVector.from_csq(w / w.sum(), phases)
