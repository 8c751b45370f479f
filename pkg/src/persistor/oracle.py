"""Independent reference computations and random test corpora.

Nothing here uses column reduction. The GF(2) and rational routes work
from ranks of boundary blocks only, so they can check the reduction and
Hodge pipelines.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from persistor import exact
from persistor.complex import boundary_matrix_real, build_complex, faces
from persistor.persistence_algebra import PersistenceModule, decompose_module
from persistor.reduction import HomologyBasis, reduce
from persistor.rips import RipsConfig, rips_pipeline

# -- sub-level persistence of a filtered simplicial complex -------------------

def _by_dim(filt) -> list:
    return [filt.simplices_in_order(r) for r in range(filt.max_dim + 2)]


def gf2_beta_table(filt) -> np.ndarray:
    """beta[r, s, t] = rank([B_t | Z_s]) - rank(B_t), all over GF(2)."""
    P, top = filt.P, filt.max_dim
    per = _by_dim(filt)
    idx = [{s: k for k, s in enumerate(ss)} for ss in per]
    step = filt.f_ind
    beta = np.zeros((top + 1, P + 1, P + 1), dtype=np.int64)
    for r in range(top + 1):
        def bnd(sig, r_):
            return exact.to_mask(idx[r_ - 1][t] for t in faces(sig)) if r_ > 0 else 0

        for s in range(P + 1):
            cols = [bnd(sig, r) for sig in per[r] if step[sig] <= s]
            Z = gf2_cycles(cols)
            for t in range(s, P + 1):
                B = [bnd(sig, r + 1) for sig in per[r + 1] if step[sig] <= t]
                beta[r, s, t] = exact.gf2_rank(B + Z) - exact.gf2_rank(B)
    return beta


def gf2_cycles(cols: list) -> list:
    """Kernel of the map whose columns are `cols`, as masks over column indices."""
    return exact.gf2_nullspace(cols)


def mu_inclusion_exclusion(beta: np.ndarray) -> np.ndarray:
    """mu(s,t) = b(s,t) - b(s-1,t) - b(s,t+1) + b(s-1,t+1), b(s, inf) = b(s, P)."""
    top, n, _ = beta.shape
    mu = np.zeros((top, n, n + 1), dtype=np.int64)

    def b(r, s, t):
        if s < 0 or t < s:
            return 0
        return int(beta[r, s, min(t, n - 1)])

    for r in range(top):
        for s in range(n):
            for t in range(s, n - 1):
                mu[r, s, t] = b(r, s, t) - b(r, s - 1, t) - b(r, s, t + 1) + b(r, s - 1, t + 1)
            # a class alive at P counts as never dying
            mu[r, s, n] = b(r, s, n - 1) - b(r, s - 1, n - 1)
    return mu


def gf2_mu_table(filt) -> np.ndarray:
    return mu_inclusion_exclusion(gf2_beta_table(filt))


def rational_beta_table(filt) -> np.ndarray:
    """beta over Q: dim Z_s - rank d_{r+1}^t + rank(rows of d_{r+1}^t outside K_s)."""
    P, top = filt.P, filt.max_dim
    per = _by_dim(filt)
    step = filt.f_ind
    cplx = filt.complex

    def block(r, s_rows, s_cols):
        rows = [x for x in per[r - 1] if s_rows(x)] if r > 0 else []
        cols = [x for x in per[r] if s_cols(x)]
        m = boundary_matrix_real(cplx, r, rows, cols) if rows and cols else np.zeros((len(rows), len(cols)))
        return m.astype(int).tolist()

    beta = np.zeros((top + 1, P + 1, P + 1), dtype=np.int64)
    for r in range(top + 1):
        for s in range(P + 1):
            n_s = sum(1 for x in per[r] if step[x] <= s)
            z = n_s - exact.rational_rank(block(r, lambda x: step[x] <= s, lambda x: step[x] <= s))
            for t in range(s, P + 1):
                if r + 1 >= len(per) or not per[r + 1]:
                    beta[r, s, t] = z
                    continue
                at_t = lambda x: step[x] <= t
                full = exact.rational_rank(block(r + 1, at_t, at_t))
                outside = exact.rational_rank(block(r + 1, lambda x: s < step[x] <= t, at_t))
                beta[r, s, t] = z - full + outside
    return beta


# -- homology modules ----------------------------------------------------------

def homology_module(filt, r: int) -> PersistenceModule:
    """H_r(K_0) -> ... -> H_r(K_P) over GF(2) in the reduction's cycle bases."""
    order = filt.ordering.cells
    R = reduce(filt.boundary(), track_v=True)
    steps = [filt.f_ind[c] for c in order]
    prefix = [sum(1 for x in steps if x <= s) for s in range(filt.P + 1)]
    bases = [HomologyBasis.from_reduced(R, n) for n in prefix]
    gens = [b.generators_of_dim(r) for b in bases]
    maps = []
    for s in range(filt.P):
        pos = {j: k for k, j in enumerate(gens[s + 1])}
        m = [[0] * len(gens[s]) for _ in gens[s + 1]]
        for c, j in enumerate(gens[s]):
            for g in bases[s + 1].coordinates(bases[s].generators[j]):
                m[pos[g]][c] = 1
        maps.append(m)
    return PersistenceModule([len(g) for g in gens], maps)


def module_bars(filt, r: int) -> list:
    return [replace(b, dim=r) for b in decompose_module(homology_module(filt, r))]


# -- corpora ---------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusConfig:
    points: tuple = (3, 10)
    max_dim: tuple = (1, 3)
    steps: tuple = (2, 30)
    max_cells: int = 60
    ambient_dim: int = 2


def random_cloud(rng, p: int, d: int = 2) -> np.ndarray:
    return rng.random((p, d))


def rips_corpus(n: int, seed: int = 0, config: CorpusConfig = CorpusConfig(),
                rips: RipsConfig = RipsConfig()) -> list:
    """n random Rips filtrations; S is lowered until the filtration is small."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        p = int(rng.integers(config.points[0], config.points[1] + 1))
        m = int(rng.integers(config.max_dim[0], config.max_dim[1] + 1))
        S = int(rng.integers(config.steps[0], config.steps[1] + 1))
        pts = random_cloud(rng, p, config.ambient_dim)
        res = rips_pipeline(pts, m, S, rips)
        while len(res.filtration.complex) > config.max_cells and S > 1:
            S -= 1
            res = rips_pipeline(pts, m, S, rips)
        if len(res.filtration.complex) <= config.max_cells:
            out.append(res)
    return out


def random_complex(rng, n_vertices: int, max_dim: int, n_top: int | None = None):
    """Closure of a few random simplices on vertices 1..n, every vertex kept."""
    n_top = n_top if n_top is not None else int(rng.integers(1, 2 * n_vertices + 1))
    simplices = [(v,) for v in range(1, n_vertices + 1)]
    for _ in range(n_top):
        k = int(rng.integers(2, min(max_dim, n_vertices - 1) + 2)) if n_vertices > 1 else 1
        simplices.append(tuple(sorted(rng.choice(np.arange(1, n_vertices + 1), k, replace=False).tolist())))
    return build_complex(simplices)


def random_pl_map(rng, max_vertices: int = 8, max_dim: int = 3):
    """A random complex with distinct random vertex values."""
    from persistor.level import check_generic

    n = int(rng.integers(2, max_vertices + 1))
    cx = random_complex(rng, n, max_dim)
    vals = rng.permutation(n) + rng.random(n) * 0.5
    return check_generic(cx, {v: float(vals[v - 1]) for v in cx.vertices})


def full_simplex(n: int):
    return build_complex([tuple(range(1, n + 1))])
