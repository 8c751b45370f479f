"""Simplicial complexes, cut cells, orderings and boundary matrices.

Vertex ids are 1-based. Simplices are strictly increasing tuples of ids.

Cut cells assume the canonical labelling of a generic PL map, f(x_i) = t_i,
and measure levels in half-units: vertex i sits at level 2i and the
midpoint t_{i+1/2} sits at 2i+1. A cell is then (base, lo, hi):

    lo == hi == L        level cut |base| ∩ f^-1(L)
    (-inf, +inf)         the original simplex
    (L, +inf)            upper slab   |base| ∩ f^-1[L, oo)
    (-inf, L)            lower slab   |base| ∩ f^-1(-oo, L]
    (L1, L2)             mid slab     |base| ∩ f^-1[L1, L2]

Finite lo / hi always lie strictly inside (t_min(base), t_max(base)).
Nothing is embedded; faces are derived from the base face relation.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path

import numpy as np

from persistor.errors import (
    InconsistencyError,
    InputError,
    InvalidFiltrationError,
    MalformedSimplexError,
)

INF = math.inf
Simplex = tuple  # tuple[int, ...]


def simplex_key(s: Simplex) -> tuple:
    """Initial order: dimension first, then lexicographic."""
    return (len(s), s)


def faces(s: Simplex) -> list[Simplex]:
    """Codimension-1 faces in the order obtained by omitting position 1, 2, ..."""
    if len(s) <= 1:
        return []
    return [s[:k] + s[k + 1:] for k in range(len(s))]


@dataclass(frozen=True)
class SimplicialComplex:
    simplices: tuple  # tuple[tuple[Simplex, ...], ...], one entry per dimension
    closure_added: bool = False

    @cached_property
    def cells(self) -> list[Simplex]:
        return [s for layer in self.simplices for s in layer]

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.cells)

    def __contains__(self, s) -> bool:
        return s in self._members

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def counts(self) -> list[int]:
        return [len(layer) for layer in self.simplices]

    @property
    def vertices(self) -> list[int]:
        return [s[0] for s in self.simplices[0]] if self.simplices else []

    @property
    def n_vertices(self) -> int:
        return len(self.simplices[0]) if self.simplices else 0

    def of_dim(self, r: int) -> tuple:
        return self.simplices[r] if 0 <= r <= self.dim else ()

    def cell_dim(self, s: Simplex) -> int:
        return len(s) - 1

    def facets(self, s: Simplex) -> set:
        return set(faces(s))


def _check_simplex(t) -> Simplex:
    try:
        vs = tuple(int(v) for v in t)
    except (TypeError, ValueError) as exc:
        raise MalformedSimplexError(f"not a vertex tuple: {t!r}") from exc
    if not vs:
        raise MalformedSimplexError("empty simplex")
    if len(set(vs)) != len(vs):
        raise MalformedSimplexError(f"repeated vertex in {t!r}")
    if min(vs) < 1:
        raise MalformedSimplexError(f"vertex ids are 1-based: {t!r}")
    return tuple(sorted(vs))


def build_complex(simplex_list: Iterable) -> SimplicialComplex:
    given = {_check_simplex(t) for t in simplex_list}
    closed = set()
    for s in given:
        for k in range(1, len(s) + 1):
            closed.update(combinations(s, k))
    top = max((len(s) for s in closed), default=0)
    layers = tuple(
        tuple(sorted(s for s in closed if len(s) == d + 1)) for d in range(top)
    )
    return SimplicialComplex(layers, closure_added=len(closed) > len(given))


def skeleton(cplx: SimplicialComplex, m: int) -> SimplicialComplex:
    if m < 0:
        raise InputError("skeleton dimension must be >= 0")
    return SimplicialComplex(cplx.simplices[: m + 1], closure_added=False)


def read_simplex_file(path) -> SimplicialComplex:
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append(tuple(int(x) for x in line.split()))
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: expected integer vertex ids") from exc
    return build_complex(rows)


# -- cut cells ---------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    base: Simplex
    lo: float = -INF
    hi: float = INF

    @property
    def a(self) -> int:
        return 2 * self.base[0]

    @property
    def b(self) -> int:
        return 2 * self.base[-1]

    @property
    def is_level_cut(self) -> bool:
        return self.lo == self.hi

    @property
    def kind(self) -> str:
        if self.is_level_cut:
            return "level"
        if self.lo == -INF and self.hi == INF:
            return "original"
        if self.hi == INF:
            return "upper"
        if self.lo == -INF:
            return "lower"
        return "mid"

    @property
    def dim(self) -> int:
        return len(self.base) - (2 if self.is_level_cut else 1)

    @property
    def t_min(self) -> float:
        return self.a if self.lo == -INF else self.lo

    @property
    def t_max(self) -> float:
        return self.b if self.hi == INF else self.hi

    def sort_key(self) -> tuple:
        return (self.dim, simplex_key(self.base), self.lo)

    def __str__(self) -> str:
        name = "".join(map(str, self.base)) if max(self.base) < 10 else "-".join(map(str, self.base))
        k = self.kind
        if k == "original":
            return name
        if k == "level":
            return f"{name}|{_lvl(self.lo)}"
        return f"{name}|{_lvl(self.lo)},{_lvl(self.hi)}"


def _lvl(x: float) -> str:
    if x in (INF, -INF):
        return "inf" if x > 0 else "-inf"
    if float(x).is_integer():
        x = int(x)
        return str(x // 2) if x % 2 == 0 else f"{x // 2}.5"
    return f"{x / 2:g}"


def piece(tau: Simplex, lo: float, hi: float) -> Cell | None:
    """Canonical cell for |tau| ∩ f^-1[lo, hi], or None when empty."""
    a, b = 2 * tau[0], 2 * tau[-1]
    lo_, hi_ = max(lo, a), min(hi, b)
    if lo_ > hi_:
        return None
    if lo_ == hi_:
        if a < lo_ < b:
            return Cell(tau, lo_, lo_)
        return Cell((tau[0],) if lo_ == a else (tau[-1],))
    return Cell(tau, lo if lo > a else -INF, hi if hi < b else INF)


def cell_facets(c: Cell) -> set:
    s = c.base
    if c.is_level_cut:
        cands = [piece(t, c.lo, c.lo) for t in faces(s)]
    else:
        cands = [piece(t, c.lo, c.hi) for t in faces(s)]
        if c.lo != -INF:
            cands.append(Cell(s, c.lo, c.lo))
        if c.hi != INF:
            cands.append(Cell(s, c.hi, c.hi))
    return {x for x in cands if x is not None and x.dim == c.dim - 1}


@dataclass(frozen=True)
class CellComplex:
    """A complex of cut cells over a canonically labelled simplicial complex."""

    cells: tuple  # tuple[Cell, ...] in initial order

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.cells)

    def __contains__(self, c) -> bool:
        return c in self._members

    def __len__(self) -> int:
        return len(self.cells)

    def cell_dim(self, c: Cell) -> int:
        return c.dim

    def facets(self, c: Cell) -> set:
        out = cell_facets(c)
        missing = [x for x in out if x not in self._members]
        if missing:
            raise InconsistencyError(f"cut complex not closed: {c} lacks {missing[0]}")
        return out

    def subcomplex(self, keep: Callable[[Cell], bool]) -> CellComplex:
        return CellComplex(tuple(c for c in self.cells if keep(c)))

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)


def cut_complex(X: SimplicialComplex, cuts: Iterable[float], lb: float = -INF,
                ub: float = INF) -> CellComplex:
    """Cells of X cut at every level in `cuts` that lie within [lb, ub]."""
    cuts = sorted(set(cuts))
    out = []
    for s in X.cells:
        a, b = 2 * s[0], 2 * s[-1]
        if len(s) == 1:
            if lb <= a <= ub:
                out.append(Cell(s))
            continue
        inner = [c for c in cuts if a < c < b]
        for c in inner:
            if lb <= c <= ub:
                out.append(Cell(s, c, c))
        pts = [-INF] + inner + [INF]
        for p, q in zip(pts, pts[1:]):
            lo_ = a if p == -INF else p
            hi_ = b if q == INF else q
            if lo_ >= lb and hi_ <= ub:
                out.append(Cell(s, p, q))
    out.sort(key=Cell.sort_key)
    return CellComplex(tuple(out))


def as_cell_complex(X: SimplicialComplex) -> CellComplex:
    return CellComplex(tuple(Cell(s) for s in X.cells))


# -- orderings and boundary matrices -----------------------------------------

@dataclass(frozen=True)
class Ordering:
    cells: tuple
    rule: str = "initial"

    @cached_property
    def index(self) -> dict:
        return {c: i for i, c in enumerate(self.cells)}

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)


def initial_ordering(cplx) -> Ordering:
    if isinstance(cplx, SimplicialComplex):
        return Ordering(tuple(sorted(cplx.cells, key=simplex_key)), "initial")
    return Ordering(tuple(sorted(cplx.cells, key=Cell.sort_key)), "initial")


def compatible_ordering(cplx, f_ind: dict) -> Ordering:
    """Order by (f_ind, dimension, lexicographic), checking face monotonicity."""
    for c in cplx.cells:
        for t in cplx.facets(c):
            if f_ind[t] > f_ind[c]:
                raise InvalidFiltrationError(f"face {t} enters after {c}")
    if isinstance(cplx, SimplicialComplex):
        key = lambda c: (f_ind[c], len(c), c)
    else:
        key = lambda c: (f_ind[c],) + c.sort_key()
    return Ordering(tuple(sorted(cplx.cells, key=key)), "compatible")


@dataclass
class BoundaryMatrix:
    """GF(2) boundary matrix stored as columns of row-index sets."""

    columns: list  # list[set[int]]
    dims: list  # cell dimension per column

    @property
    def n(self) -> int:
        return len(self.columns)

    def dense(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.uint8)
        for j, col in enumerate(self.columns):
            for i in col:
                m[i, j] = 1
        return m

    def is_upper_triangular(self) -> bool:
        return all(all(i < j for i in col) for j, col in enumerate(self.columns))

    def submatrix(self, idx: Sequence[int]) -> BoundaryMatrix:
        """Restriction to the columns/rows `idx` (must be face-closed)."""
        pos = {g: k for k, g in enumerate(idx)}
        cols = []
        for g in idx:
            try:
                cols.append({pos[i] for i in self.columns[g]})
            except KeyError as exc:
                raise InconsistencyError("index set is not face-closed") from exc
        return BoundaryMatrix(cols, [self.dims[g] for g in idx])


def boundary_matrix_gf2(cplx, ordering: Ordering) -> BoundaryMatrix:
    if len(ordering) != len(cplx) or any(c not in cplx for c in ordering):
        raise InputError("ordering does not cover the complex")
    idx = ordering.index
    cols = [{idx[f] for f in cplx.facets(c)} for c in ordering.cells]
    return BoundaryMatrix(cols, [cplx.cell_dim(c) for c in ordering.cells])


def boundary_matrix_real(cplx: SimplicialComplex, r: int,
                         rows: Sequence | None = None,
                         cols: Sequence | None = None) -> np.ndarray:
    """Signed matrix of d_r : C_r -> C_{r-1}; omitting 1-based position k gives (-1)^(k+1)."""
    rows = list(cplx.of_dim(r - 1)) if rows is None else list(rows)
    cols = list(cplx.of_dim(r)) if cols is None else list(cols)
    m = np.zeros((len(rows), len(cols)))
    if r <= 0:
        return m
    ridx = {s: i for i, s in enumerate(rows)}
    for j, s in enumerate(cols):
        for k, t in enumerate(faces(s), start=1):
            if t in ridx:
                m[ridx[t], j] = 1.0 if k % 2 == 1 else -1.0
    return m
