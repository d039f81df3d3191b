"""Brute-force Born-rule evaluation of the whole protocol.

Everything here is computed from explicit matrices: the Kraus operators are
built as dense ``d x d`` arrays, the minimum-error projectors as outer products
of Fourier columns, and every figure of merit as an average of
``<psi_j| A^dag Pi_n A |psi_j>`` over inputs, arms and outcomes. None of the
closed forms in :mod:`cudqsd.discrimination` is used, which makes this the
independent check for them.
"""

from __future__ import annotations

import numpy as np

from .qudit import CoefficientVector, build_symmetric_state, fourier_matrix


def kraus_matrices(c: CoefficientVector):
    """Dense conclusive and inconclusive Kraus operators."""
    # stored magnitudes, not abs(amps): the latter can move a tied minimum by an ulp
    mags = c.magnitudes
    unphase = np.diag(np.exp(-1j * c.phases))
    ratio = mags.min() / mags
    return (np.diag(ratio) @ unphase,
            np.diag(np.sqrt(np.maximum(1 - ratio**2, 0.0))) @ unphase)


def joint_table(c: CoefficientVector) -> np.ndarray:
    """``P[arm, outcome, input]`` for the ideal protocol (arm 0 conclusive)."""
    d = c.dim
    kraus = kraus_matrices(c)
    f = fourier_matrix(d)
    projectors = [np.outer(f[:, n], f[:, n].conj()) for n in range(d)]
    table = np.empty((2, d, d))
    for j in range(d):
        psi = build_symmetric_state(c, j).amps
        for arm, a in enumerate(kraus):
            out = a @ psi
            for n, proj in enumerate(projectors):
                table[arm, n, j] = np.real(out.conj() @ proj @ out)
    return table


def brute_force_report(c: CoefficientVector) -> dict:
    """Every :class:`~cudqsd.discrimination.TheoryReport` field from a Born-rule average."""
    d = c.dim
    t = joint_table(c)
    idx = np.arange(d)
    arm_prob = t.sum(axis=1)  # [arm, input]
    correct = t[:, idx, idx]  # [arm, input]: outcome n == input j
    p_perp = float(arm_prob[0].mean())
    p_inc = float(arm_prob[1].mean())
    p_me_conc = float(np.mean(correct[0] / arm_prob[0]))
    if p_inc < 1e-15:
        p_me_inc = 1.0 / d
    else:
        p_me_inc = float(np.mean(correct[1] / arm_prob[1]))
    p_ud = float(correct[0].mean()) + p_inc / d
    p_cud = float(correct.sum(axis=0).mean())
    # rank of the inconclusive outputs = dimension of the space they span
    a_inc = kraus_matrices(c)[1]
    inc_states = np.stack([a_inc @ build_symmetric_state(c, j).amps for j in range(d)])
    sv = np.linalg.svd(inc_states, compute_uv=False)
    rank = int(np.count_nonzero(sv > 1e-6))
    return dict(
        p_perp=p_perp,
        p_inc=p_inc,
        p_me_conclusive=p_me_conc,
        p_me_inconclusive=p_me_inc,
        p_ud=p_ud,
        p_cud=p_cud,
        r_theory=p_cud / p_ud,
        dim_inconclusive=rank,
    )
