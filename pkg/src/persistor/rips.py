"""Point clouds, epsilon schedules and Vietoris-Rips filtrations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy.spatial.distance import pdist, squareform

from persistor.complex import (
    Ordering,
    SimplicialComplex,
    boundary_matrix_gf2,
    build_complex,
    compatible_ordering,
)
from persistor.errors import DegenerateCloudError, DuplicatePointError, InputError

MACHINE_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RipsConfig:
    min_gap: float = 3e-4  # target minimum gap between consecutive epsilons
    merge_factor: float = 3.0  # gaps below merge_factor * diam * eps are round-off
    scale_margin: float = 2.0  # rescale so the min gap becomes margin * min_gap


def read_points(path) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([float(x) for x in line.replace(",", " ").split()])
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: expected numbers") from exc
    if not rows:
        raise InputError(f"{path}: no points")
    if len({len(r) for r in rows}) != 1:
        raise InputError(f"{path}: rows have different lengths")
    pts = np.array(rows)
    if not np.all(np.isfinite(pts)):
        raise InputError(f"{path}: non-finite coordinate")
    return pts


def distance_matrix(points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) < 1:
        raise InputError("point cloud must be a non-empty p x d array")
    D = squareform(pdist(pts)) if len(pts) > 1 else np.zeros((1, 1))
    off = D[~np.eye(len(pts), dtype=bool)]
    if off.size and off.min() == 0:
        i, j = np.argwhere((D == 0) & ~np.eye(len(pts), dtype=bool))[0]
        raise DuplicatePointError(f"points {i + 1} and {j + 1} coincide")
    return D


def merged_levels(D: np.ndarray, config: RipsConfig = RipsConfig()) -> np.ndarray:
    """0 followed by the distinct distances, round-off duplicates dropped."""
    p = len(D)
    d = np.sort(D[np.triu_indices(p, 1)])
    tol = config.merge_factor * (d.max() if d.size else 0.0) * MACHINE_EPS
    levels = [0.0]
    for x in d:
        if x - levels[-1] >= tol and x != levels[-1]:
            levels.append(float(x))
    return np.array(levels)


def scale_points(points: np.ndarray, config: RipsConfig = RipsConfig()) -> tuple[np.ndarray, float]:
    """Uniformly rescale so that consecutive epsilons differ by more than min_gap."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2:
        raise DegenerateCloudError("need at least two points to scale")
    D = distance_matrix(pts)
    if D.max() == 0:
        raise DegenerateCloudError("all points coincide")
    gap = np.diff(merged_levels(D, config)).min()
    if gap > config.min_gap:
        return pts.copy(), 1.0
    c = config.scale_margin * config.min_gap / gap
    return pts * c, float(c)


@dataclass(frozen=True)
class EpsilonSchedule:
    eps: tuple  # 0 = eps_0 < ... < eps_N
    P: int

    @property
    def N(self) -> int:
        return len(self.eps) - 1

    @property
    def midpoints(self) -> tuple:
        e = self.eps
        return tuple((e[k] + e[k + 1]) / 2 for k in range(self.N)) + (e[-1] + 0.5,)

    @property
    def eps_P(self) -> float:
        return self.eps[self.P]


def epsilon_schedule(D: np.ndarray, S: int, config: RipsConfig = RipsConfig()) -> EpsilonSchedule:
    levels = merged_levels(D, config)
    N = len(levels) - 1
    return EpsilonSchedule(tuple(float(x) for x in levels), min(max(S, 0), N))


def edge_steps(D: np.ndarray, sched: EpsilonSchedule) -> np.ndarray:
    """Smallest s with D[i, j] <= eps_s, matching merged levels by nearest value."""
    eps = np.array(sched.eps)
    idx = np.searchsorted(eps, D, side="left")
    idx = np.clip(idx, 0, len(eps) - 1)
    # a distance merged into the previous level sits just above it
    below = np.clip(idx - 1, 0, None)
    use_below = np.abs(D - eps[below]) < np.abs(D - eps[idx])
    return np.where(use_below, below, idx)


@dataclass
class FilteredComplex:
    complex: SimplicialComplex
    f_ind: dict  # simplex -> step 0..P
    P: int
    max_dim: int
    eps: tuple = ()

    @cached_property
    def ordering(self) -> Ordering:
        return compatible_ordering(self.complex, self.f_ind)

    @cached_property
    def dimension(self) -> np.ndarray:
        """dimension[r, s] = n_r^s, the number of r-simplices present at step s."""
        tab = np.zeros((self.max_dim + 1, self.P + 1), dtype=int)
        for s, v in self.f_ind.items():
            if len(s) - 1 <= self.max_dim:
                tab[len(s) - 1, v:] += 1
        return tab

    def simplices_in_order(self, r: int) -> list:
        return [s for s in self.ordering.cells if len(s) == r + 1]

    def boundary(self):
        return boundary_matrix_gf2(self.complex, self.ordering)

    def steps(self) -> list:
        return [self.f_ind[c] for c in self.ordering.cells]

    def at_step(self, s: int) -> SimplicialComplex:
        return build_complex([c for c in self.complex.cells if self.f_ind[c] <= s])

    @classmethod
    def from_steps(cls, f_ind: dict, P: int | None = None, max_dim: int | None = None) -> FilteredComplex:
        cplx = build_complex(f_ind.keys())
        if cplx.closure_added:
            raise InputError("filtration must list every face")
        f = {s: int(f_ind[s]) for s in cplx.cells}
        P = max(f.values(), default=0) if P is None else P
        md = cplx.dim if max_dim is None else max_dim
        return cls(cplx, f, P, md)


def rips_filtration(D: np.ndarray, m: int, P: int, sched: EpsilonSchedule | None = None,
                    config: RipsConfig = RipsConfig()) -> FilteredComplex:
    """Clique complex up to dimension m and step P, grown by incremental expansion."""
    sched = epsilon_schedule(D, P, config) if sched is None else sched
    p = len(D)
    est = edge_steps(D, sched)
    nbrs = {v: [w for w in range(v + 1, p) if est[v, w] <= P] for v in range(p)}
    f = {}
    frontier = []
    for v in range(p):
        f[(v + 1,)] = 0
        frontier.append(((v,), 0))
    for _ in range(m):
        nxt = []
        for sig, st in frontier:
            common = set(nbrs[sig[0]])
            for u in sig[1:]:
                common &= set(nbrs[u])
            for w in sorted(x for x in common if x > sig[-1]):
                s2 = max(st, max(int(est[u, w]) for u in sig))
                tau = sig + (w,)
                f[tuple(u + 1 for u in tau)] = s2
                nxt.append((tau, s2))
        frontier = nxt
    cplx = build_complex(f.keys()) if f else build_complex([])
    return FilteredComplex(cplx, f, P, m, sched.eps)


def rips_filtration_naive(D: np.ndarray, m: int, P: int, sched: EpsilonSchedule | None = None,
                          config: RipsConfig = RipsConfig()) -> FilteredComplex:
    """Scan every vertex subset of size <= m+1; kept as the oracle for the expansion."""
    sched = epsilon_schedule(D, P, config) if sched is None else sched
    p = len(D)
    est = edge_steps(D, sched)
    f = {}
    for k in range(1, min(m + 1, p) + 1):
        for sig in itertools.combinations(range(p), k):
            st = max((int(est[u, w]) for u, w in itertools.combinations(sig, 2)), default=0)
            if st <= P:
                f[tuple(u + 1 for u in sig)] = st
    return FilteredComplex(build_complex(f.keys()), f, P, m, sched.eps)


def elz_bars(filt: FilteredComplex) -> list:
    """GF(2) bars [s, e] / [s, inf) of the filtration by column reduction."""
    from persistor.reduction import barcodes_from_reduced, reduce

    R = reduce(filt.boundary())
    return barcodes_from_reduced(R, filt.steps())


def elz_mu(filt: FilteredComplex) -> np.ndarray:
    """mu[r, s, e] with column P+1 for bars that never die."""
    from persistor.persistence_algebra import mu_table_from_bars

    return mu_table_from_bars(elz_bars(filt), filt.P + 1, filt.max_dim)


@dataclass
class RipsResult:
    points: np.ndarray
    scale: float
    schedule: EpsilonSchedule
    filtration: FilteredComplex
    meta: dict = field(default_factory=dict)


def rips_pipeline(points: np.ndarray, m: int, S: int, config: RipsConfig = RipsConfig()) -> RipsResult:
    """scale -> distances -> schedule -> Rips(m, P)."""
    pts, c = scale_points(points, config) if len(points) > 1 else (np.asarray(points, float), 1.0)
    D = distance_matrix(pts)
    sched = epsilon_schedule(D, S, config)
    filt = rips_filtration(D, m, sched.P, sched, config)
    return RipsResult(pts, c, sched, filt)
