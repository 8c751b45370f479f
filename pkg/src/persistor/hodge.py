"""Real-coefficient persistence through the elementary Hodge decomposition."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from persistor.errors import InputError, NumericalRankError
from persistor.persistence_algebra import mu_from_beta as _mu_from_beta

DEFAULT_RANK_TOL = 1e-8


@dataclass(frozen=True)
class HodgeConfig:
    rank_tol: float = DEFAULT_RANK_TOL

    @classmethod
    def from_env(cls) -> HodgeConfig:
        raw = os.environ.get("PERSISTOR_RANK_TOL")
        if raw is None:
            return cls()
        try:
            tol = float(raw)
        except ValueError as exc:
            raise InputError(f"PERSISTOR_RANK_TOL is not a number: {raw!r}") from exc
        if not tol > 0:
            raise InputError("PERSISTOR_RANK_TOL must be positive")
        return cls(rank_tol=tol)


def orthonormalize(A: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalisation pass.

    A column is dropped when its residual norm falls below sqrt(tol) times
    its original norm, the same cut as an eigenvalue tol on A^T A.
    """
    A = np.asarray(A, dtype=float)
    m = A.shape[0]
    Q = np.zeros((m, 0))
    cut = np.sqrt(tol)
    for j in range(A.shape[1]):
        v = A[:, j].copy()
        norm0 = np.linalg.norm(v)
        if norm0 == 0:
            continue
        for _ in range(2):
            for k in range(Q.shape[1]):
                v -= (Q[:, k] @ v) * Q[:, k]
        nv = np.linalg.norm(v)
        if nv > cut * max(norm0, 1.0):
            Q = np.column_stack([Q, v / nv])
    return Q


def projection_onto_image(A: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    Q = orthonormalize(A, tol)
    return Q @ Q.T


@dataclass
class HodgeProjections:
    plus: np.ndarray  # onto im d_{r+1}
    minus: np.ndarray  # onto im d_r^T
    harmonic: np.ndarray


def harmonic_projection(d_next: np.ndarray, d_r: np.ndarray,
                        tol: float = DEFAULT_RANK_TOL) -> HodgeProjections:
    n = d_r.shape[1]
    if d_next.shape[0] != n:
        raise InputError(f"d_(r+1) has {d_next.shape[0]} rows, C_r has dimension {n}")
    p_plus = projection_onto_image(d_next, tol) if d_next.size else np.zeros((n, n))
    p_minus = projection_onto_image(d_r.T, tol) if d_r.size else np.zeros((n, n))
    return HodgeProjections(p_plus, p_minus, np.eye(n) - p_plus - p_minus)


def rank_psd(A: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of eigenvalues of A A^T (or A^T A, whichever is smaller) above tol."""
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return 0
    G = A @ A.T if A.shape[0] <= A.shape[1] else A.T @ A
    return int(np.sum(np.linalg.eigvalsh(G) > tol))


def betti_real(cplx, r: int, tol: float = DEFAULT_RANK_TOL) -> int:
    from persistor.complex import boundary_matrix_real

    n = len(cplx.of_dim(r))
    return n - rank_psd(boundary_matrix_real(cplx, r + 1), tol) - rank_psd(boundary_matrix_real(cplx, r), tol)


@dataclass
class StepBoundaries:
    """d_r^P in filtration order, with n_r^s counts per step."""

    mats: list  # mats[r] : n_{r-1}^P x n_r^P
    counts: np.ndarray  # counts[r, s] = n_r^s

    def block(self, r: int, s: int) -> np.ndarray:
        rows = self.counts[r - 1, s] if r >= 1 else 0
        cols = self.counts[r, s] if r < self.counts.shape[0] else 0
        if r < 0 or r >= len(self.mats):
            return np.zeros((rows, cols))
        return self.mats[r][:rows, :cols]


def step_boundaries(filt) -> StepBoundaries:
    from persistor.complex import boundary_matrix_real

    top = filt.max_dim
    per_dim = [filt.simplices_in_order(r) for r in range(top + 1)]
    mats = [np.zeros((0, len(per_dim[0])))]
    for r in range(1, top + 1):
        mats.append(boundary_matrix_real(filt.complex, r, per_dim[r - 1], per_dim[r]))
    counts = np.zeros((top + 2, filt.P + 1), dtype=int)
    counts[: top + 1] = filt.dimension
    mats.append(np.zeros((len(per_dim[top]), 0)))
    return StepBoundaries(mats, counts)


def projections_at(sb: StepBoundaries, r: int, s: int, tol: float = DEFAULT_RANK_TOL) -> HodgeProjections:
    return harmonic_projection(sb.block(r + 1, s), sb.block(r, s), tol)


def beta_table(filt, config: HodgeConfig | None = None) -> np.ndarray:
    """beta[r, s, t] = rank(p_H^t i^{s,t} p_H^s) for s <= t."""
    tol = (config or HodgeConfig()).rank_tol
    sb = step_boundaries(filt)
    P, top = filt.P, filt.max_dim
    beta = np.zeros((top + 1, P + 1, P + 1), dtype=np.int64)
    for r in range(top + 1):
        pH = [projections_at(sb, r, s, tol).harmonic for s in range(P + 1)]
        h = []
        for s in range(P + 1):
            n_s = sb.counts[r, s]
            h.append(n_s - rank_psd(sb.block(r + 1, s), tol) - rank_psd(sb.block(r, s), tol))
        for s in range(P + 1):
            beta[r, s, s] = h[s]
            n_s = sb.counts[r, s]
            for t in range(s + 1, P + 1):
                # beta(s, t) <= beta(s, i) and <= dim H^i for s <= i <= t
                if h[t] == 0 or beta[r, s, t - 1] == 0:
                    continue
                beta[r, s, t] = rank_psd(pH[t][:, :n_s] @ pH[s], tol)
    return beta


def mu_from_beta(beta: np.ndarray) -> np.ndarray:
    """mu[r, s, t] with column P+1 for t = inf, beta(s, inf) read as beta(s, P)."""
    out = np.stack([_mu_from_beta(beta[r]) for r in range(beta.shape[0])])
    bad = np.argwhere(out < 0)
    if len(bad):
        r, s, t = bad[0]
        raise NumericalRankError(f"negative mu at r={r}, s={s}, t={t}; rank threshold too coarse")
    return out
