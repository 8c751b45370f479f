"""Bar codes, the beta/mu/k number algebra, and module decomposition.

Tables are indexed by step 0..n-1 plus an explicit infinity column, so a
mu table has shape (n, n+1) and mu[s, n] counts bars [s, inf).
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from persistor import exact
from persistor.errors import TamenessError

INF = math.inf

CLOSED, OPEN, INFINITE = "closed", "open", "infinite"


@dataclass(frozen=True, order=True)
class BarcodeInterval:
    dim: int
    left: object
    right: object
    left_kind: str = CLOSED
    right_kind: str = CLOSED
    mult: int = 1

    def key(self) -> tuple:
        return (self.dim, self.left, self.right, self.left_kind, self.right_kind)

    def contains(self, i, j) -> bool:
        lo_ok = self.left <= i if self.left_kind == CLOSED else self.left < i
        if self.right_kind == INFINITE:
            return lo_ok
        hi_ok = j <= self.right if self.right_kind == CLOSED else j < self.right
        return lo_ok and hi_ok

    def __str__(self) -> str:
        lb = "[" if self.left_kind == CLOSED else "("
        rb = "]" if self.right_kind == CLOSED else ")"
        right = "inf" if self.right_kind == INFINITE else self.right
        m = f" x{self.mult}" if self.mult > 1 else ""
        return f"H{self.dim} {lb}{self.left},{right}{rb}{m}"


def normalize(bars: Iterable[BarcodeInterval]) -> Counter:
    c = Counter()
    for b in bars:
        c[b.key()] += b.mult
    return +c


def barcode_multiset_equal(a: Iterable[BarcodeInterval], b: Iterable[BarcodeInterval]) -> bool:
    return normalize(a) == normalize(b)


def beta_from_barcode(bars: Iterable[BarcodeInterval], i, j) -> int:
    return sum(b.mult for b in bars if b.contains(i, j))


# -- beta / mu tables ---------------------------------------------------------

def mu_table_from_bars(bars: Iterable[BarcodeInterval], n: int, max_dim: int) -> np.ndarray:
    """Sub-level bars [s, e] / [s, inf) to mu[r, s, e] with column n for inf."""
    mu = np.zeros((max_dim + 1, n, n + 1), dtype=np.int64)
    for b in bars:
        if b.dim > max_dim:
            continue
        e = n if b.right_kind == INFINITE else b.right
        mu[b.dim, b.left, e] += b.mult
    return mu


def beta_from_mu(mu: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """beta(i, j) = sum over l <= i, m >= j of mu(l, m). Returns (finite part, inf column)."""
    n = mu.shape[0]
    # suffix sums over m (including the inf column), then prefix sums over l
    suff = np.cumsum(mu[:, ::-1], axis=1)[:, ::-1]
    pref = np.cumsum(suff, axis=0)
    beta = np.triu(pref[:, :n])
    return beta, pref[:, n]


def beta_entry_from_mu(mu: np.ndarray, i: int, j) -> int:
    n = mu.shape[0]
    jj = n if j == INF else j
    return int(mu[: i + 1, jj:].sum())


def mu_from_beta(beta: np.ndarray, beta_inf: np.ndarray | None = None) -> np.ndarray:
    """Second differences of beta; beta_inf defaults to the last finite column."""
    n = beta.shape[0]
    if beta_inf is None:
        beta_inf = beta[:, n - 1]
    ext = np.zeros((n + 1, n + 1), dtype=np.int64)  # row 0 is the s = -1 padding
    ext[1:, :n] = np.triu(beta)
    ext[1:, n] = beta_inf
    mu = np.zeros((n, n + 1), dtype=np.int64)
    for s in range(n):
        for t in range(s, n):
            mu[s, t] = ext[s + 1, t] - ext[s, t] - ext[s + 1, t + 1] + ext[s, t + 1]
        mu[s, n] = ext[s + 1, n] - ext[s, n]
    return mu


def kernel_numbers(beta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """k(i, j) = beta(i, i) - beta(i, j) and k(i) = beta(i, i)."""
    k_i = np.diag(beta).copy()
    k_ij = np.triu(k_i[:, None] - beta)
    return k_ij, k_i


# -- persistence modules ------------------------------------------------------

@dataclass
class PersistenceModule:
    """V_0 -> V_1 -> ... -> V_M; maps[n] is a dims[n+1] x dims[n] matrix (list of rows).

    The module is taken to be constant after V_M. If a map out of V_M is
    supplied it must be an automorphism.
    """

    dims: list
    maps: list
    field: exact.Field = exact.GF2

    def __post_init__(self):
        M = len(self.dims) - 1
        if len(self.maps) not in (M, M + 1):
            raise TamenessError("need one map per consecutive pair of spaces")
        for n, phi in enumerate(self.maps):
            tgt = self.dims[n + 1] if n < M else self.dims[M]
            if len(phi) != tgt or any(len(row) != self.dims[n] for row in phi):
                raise TamenessError(f"map {n} has the wrong shape")
        if len(self.maps) == M + 1 and exact.rank(self.maps[M], self.field) != self.dims[M]:
            raise TamenessError("final map is not invertible; module never stabilises")

    def apply(self, n: int, v: list) -> list:
        if self.dims[n + 1] == 0:
            return []
        if self.dims[n] == 0:
            return [self.field.zero] * self.dims[n + 1]
        return exact.matvec(self.maps[n], v, self.field)


def decompose_module(mod: PersistenceModule) -> list[BarcodeInterval]:
    """Peel off one interval summand at a time.

    The first vector of the earliest nonzero space spans a submodule
    isomorphic to an interval starting at that index. Such an interval is
    injective among modules supported from there on, so it splits off and
    the rest is handled by recursing on the quotient.
    """
    F = mod.field
    dims = list(mod.dims)
    maps = [[list(r) for r in m] for m in mod.maps[: len(dims) - 1]]
    M = len(dims) - 1
    out: list[BarcodeInterval] = []
    while any(dims):
        k = next(n for n, d in enumerate(dims) if d)
        v = [F.zero] * dims[k]
        v[0] = F.one
        orbit = {k: v}
        n, end = k, None
        while n < M:
            w = _apply(maps[n], orbit[n], dims[n + 1], F)
            if all(x == 0 for x in w):
                end = n
                break
            orbit[n + 1] = w
            n += 1
        out.append(BarcodeInterval(0, k, INF if end is None else end,
                                   right_kind=INFINITE if end is None else "closed"))
        # quotient V_n by span(orbit[n]) using a pivot coordinate
        proj, incl = {}, {}
        for n, w in orbit.items():
            p = next(i for i, x in enumerate(w) if x != 0)
            inv = F.inv(w[p])
            keep = [i for i in range(dims[n]) if i != p]
            # x -> x - (x_p / w_p) w, then drop coordinate p
            proj[n] = (p, inv, w, keep)
            incl[n] = keep
        new_maps = []
        for n in range(M):
            src_keep = incl.get(n, list(range(dims[n])))
            rows = []
            for j in src_keep:
                col = [maps[n][i][j] for i in range(dims[n + 1])]
                rows.append(_project(col, proj.get(n + 1), F))
            tgt_dim = dims[n + 1] - (1 if n + 1 in orbit else 0)
            new_maps.append([[rows[c][r] for c in range(len(src_keep))] for r in range(tgt_dim)])
        dims = [d - (1 if n in orbit else 0) for n, d in enumerate(dims)]
        maps = new_maps
    return out


def _apply(m, v, tgt_dim, F):
    if tgt_dim == 0:
        return []
    return exact.matvec(m, v, F)


def _project(col, pr, F):
    if pr is None:
        return col
    p, inv, w, keep = pr
    c = F.mul(col[p], inv)
    return [F.sub(col[i], F.mul(c, w[i])) for i in keep]


def conjugate_module(mod: PersistenceModule, rng) -> PersistenceModule:
    """Same module in random bases: phi_n -> A_{n+1} phi_n A_n^-1."""
    F = mod.field
    A = [exact.random_invertible(d, F, rng) if d else [] for d in mod.dims]
    maps = []
    for n, phi in enumerate(mod.maps[: len(mod.dims) - 1]):
        if mod.dims[n] == 0 or mod.dims[n + 1] == 0:
            maps.append([[F.zero] * mod.dims[n] for _ in range(mod.dims[n + 1])])
            continue
        maps.append(exact.matmul(exact.matmul(A[n + 1], phi, F), exact.inverse(A[n], F), F))
    return PersistenceModule(list(mod.dims), maps, F)


def module_beta(mod: PersistenceModule, i: int, j: int) -> int:
    """rank of phi_{i,j} computed directly from the matrices."""
    F = mod.field
    if mod.dims[i] == 0:
        return 0
    m = exact.identity(mod.dims[i], F)
    for n in range(i, j):
        if mod.dims[n + 1] == 0:
            return 0
        m = exact.matmul(mod.maps[n], m, F)
    return exact.rank(m, F)
