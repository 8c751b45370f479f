"""Level persistence of generic PL maps on simplicial complexes.

All levels are half-units over the canonical labelling f(x_i) = t_i:
critical value t_i is level 2i, the midpoint t_{i+1/2} is 2i+1, and the
sentinels t_{1/2}, t_{N+1/2} (empty fibres) are 1 and 2N+1.
"""

from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from persistor.complex import (
    INF,
    BoundaryMatrix,
    Cell,
    CellComplex,
    Ordering,
    SimplicialComplex,
    boundary_matrix_gf2,
    build_complex,
    cut_complex,
    simplex_key,
)
from persistor.errors import InconsistencyError, InputError, NonGenericError
from persistor.persistence_algebra import CLOSED, INFINITE, OPEN, BarcodeInterval
from persistor.reduction import (
    ReducedMatrix,
    barcodes_from_reduced,
    betti_from_reduced,
    kernel_flags,
    omega_from_flags,
    reduce,
    relative_reduce,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PLMap:
    complex: SimplicialComplex  # relabelled so that vertex i has the i-th smallest value
    values: tuple  # t_1 < ... < t_N
    labels: tuple = ()  # labels[i-1] = original id of canonical vertex i

    @property
    def N(self) -> int:
        return len(self.values)

    @property
    def levels(self) -> range:
        """Interior grid: t_1, t_{3/2}, ..., t_N."""
        return range(2, 2 * self.N + 1)

    def level(self, t: float) -> float:
        """Half-unit level of a value; linear between consecutive critical values."""
        ts = self.values
        if not ts[0] <= t <= ts[-1]:
            raise InputError(f"value {t} outside [{ts[0]}, {ts[-1]}]")
        k = int(np.searchsorted(ts, t, side="right"))  # ts[k-1] <= t < ts[k]
        if t == ts[k - 1]:
            return 2 * k
        return 2 * k + 2 * (t - ts[k - 1]) / (ts[k] - ts[k - 1])

    def value(self, h) -> float:
        if h in (INF, -INF):
            return h
        k, odd = divmod(h, 2)
        if not odd:
            return self.values[k - 1]
        lo = self.values[k - 1] if k >= 1 else self.values[0] - 1
        hi = self.values[k] if k < self.N else self.values[-1] + 1
        return (lo + hi) / 2


def check_generic(cplx: SimplicialComplex, values: dict, perturb: float = 0.0) -> PLMap:
    """Relabel vertices by increasing value; duplicated values are rejected."""
    verts = cplx.vertices
    missing = [v for v in verts if v not in values]
    if missing:
        raise InputError(f"no value for vertices {missing}")
    vals = {v: float(values[v]) for v in verts}
    if perturb:
        scale = max(1.0, max(abs(x) for x in vals.values()))
        vals = {v: x + i * perturb * scale for i, (v, x) in enumerate(sorted(vals.items()))}
    order = sorted(verts, key=lambda v: vals[v])
    ts = [vals[v] for v in order]
    if any(not math.isfinite(t) for t in ts):
        raise InputError("values must be finite")
    dup = [order[i] for i in range(1, len(ts)) if ts[i] == ts[i - 1]]
    if dup:
        raise NonGenericError(f"vertex values are not distinct (vertex {dup[0]})")
    relabel = {v: i + 1 for i, v in enumerate(order)}
    cx = build_complex(tuple(relabel[v] for v in s) for s in cplx.cells)
    return PLMap(cx, tuple(ts), tuple(order))


def canonical_map(cplx: SimplicialComplex) -> PLMap:
    """f(x_i) = i on a complex whose vertices are already 1..N."""
    verts = cplx.vertices
    if verts != list(range(1, len(verts) + 1)):
        raise InputError("canonical form needs vertices 1..N")
    return PLMap(cplx, tuple(float(v) for v in verts), tuple(verts))


def read_values_file(path) -> dict:
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"{path}:{lineno}: expected 'vertex_id value'")
        try:
            v, x = int(parts[0]), float(parts[1])
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: bad number") from exc
        if v in out:
            raise InputError(f"{path}:{lineno}: vertex {v} listed twice")
        out[v] = x
    return out


# -- cut complexes ------------------------------------------------------------

def level_complex(f: PLMap, t: int) -> CellComplex:
    return cut_complex(f.complex, [t], t, t)


def slab_complex(f: PLMap, s: int, t: int) -> CellComplex:
    if s > t:
        raise InputError("slab needs s <= t")
    return cut_complex(f.complex, [s, t], s, t)


def upper_complex(f: PLMap, s: int) -> CellComplex:
    """X_{s, inf}."""
    return cut_complex(f.complex, [s], s, INF)


def lower_complex(f: PLMap, t: int) -> CellComplex:
    """X_{-inf, t}."""
    return cut_complex(f.complex, [t], -INF, t)


def y_complex(f: PLMap, s: int, t: int) -> CellComplex:
    """Cells of X_{s, inf} with t_max <= t; homotopy equivalent to X_{s,t}."""
    return upper_complex(f, s).subcomplex(lambda c: c.t_max <= t)


def z_complex(f: PLMap, k: int, i: int) -> CellComplex:
    """Cells of X_{-inf, i} with t_min >= k."""
    return lower_complex(f, i).subcomplex(lambda c: c.t_min >= k)


def betti(cx: CellComplex) -> list[int]:
    if not len(cx):
        return []
    R = reduce(boundary_matrix_gf2(cx, Ordering(cx.cells)))
    return betti_from_reduced(R)


# -- positive / negative machinery -------------------------------------------

def _base_cmp(c: Cell) -> tuple:
    return (simplex_key(c.base), c.dim)


def positive_order(cells, level: int) -> Ordering:
    """t_max ascending, then the initial order of the base simplex."""
    return Ordering(tuple(sorted(cells, key=lambda c: (c.t_max,) + _base_cmp(c))), "positive")


def negative_order(cells, level: int) -> Ordering:
    """t_min descending, then the initial order of the base simplex."""
    return Ordering(tuple(sorted(cells, key=lambda c: (-c.t_min,) + _base_cmp(c))), "negative")


def plus_classes(f: PLMap, i: int) -> dict:
    """The five classes of X_{i, inf}, each in initial order."""
    cx = upper_complex(f, i)
    cls = {k: [] for k in ("P1", "P2", "P3", "P4", "P5")}
    for c in cx.cells:
        if c.kind == "level":
            cls["P2"].append(c)
        elif c.kind == "upper":
            cls["P3"].append(c)
        elif len(c.base) == 1 and c.a == i:
            cls["P1"].append(c)
        elif c.a == i:
            cls["P4"].append(c)
        else:
            cls["P5"].append(c)
    for v in cls.values():
        v.sort(key=_base_cmp)
    return cls


def minus_classes(f: PLMap, i: int) -> dict:
    cx = lower_complex(f, i)
    cls = {k: [] for k in ("N1", "N2", "N3", "N4", "N5")}
    for c in cx.cells:
        if c.kind == "level":
            cls["N2"].append(c)
        elif c.kind == "lower":
            cls["N3"].append(c)
        elif len(c.base) == 1 and c.b == i:
            cls["N1"].append(c)
        elif c.b == i:
            cls["N4"].append(c)
        else:
            cls["N5"].append(c)
    for v in cls.values():
        v.sort(key=_base_cmp)
    return cls


def build_boundary_plus(f: PLMap, i: int) -> tuple[BoundaryMatrix, dict]:
    cls = plus_classes(f, i)
    cells = tuple(c for k in ("P1", "P2", "P3", "P4", "P5") for c in cls[k])
    return boundary_matrix_gf2(CellComplex(cells), Ordering(cells, "classes")), cls


def build_boundary_minus(f: PLMap, i: int) -> tuple[BoundaryMatrix, dict]:
    cls = minus_classes(f, i)
    cells = tuple(c for k in ("N1", "N2", "N3", "N4", "N5") for c in cls[k])
    return boundary_matrix_gf2(CellComplex(cells), Ordering(cells, "classes")), cls


def reduce_level(d: BoundaryMatrix) -> ReducedMatrix:
    """Reduction that pushes column j into later columns sharing its low.

    After column j is pushed, earlier columns with smaller lows are pushed
    too, largest low first, so that later columns whose low dropped onto
    an earlier pivot get cleared. The result is checked; if it were ever
    not reduced the standard reduction (same lows) is used instead.
    """
    cols = [set(c) for c in d.columns]
    n = len(cols)
    lows = [max(c) if c else -1 for c in cols]
    by_low = defaultdict(set)
    for j, l in enumerate(lows):
        if l >= 0:
            by_low[l].add(j)

    def push(src: int, j: int) -> None:
        l = lows[src]
        while True:
            targets = [j0 for j0 in by_low[l] if j0 > j]
            if not targets:
                return
            for j0 in targets:
                by_low[l].discard(j0)
                cols[j0] ^= cols[src]
                nl = max(cols[j0]) if cols[j0] else -1
                lows[j0] = nl
                if nl >= 0:
                    by_low[nl].add(j0)

    for j in range(n):
        if lows[j] < 0:
            continue
        push(j, j)
        earlier = sorted((i for i in range(j) if 0 <= lows[i] < lows[j]), key=lambda i: -lows[i])
        for i in earlier:
            push(i, j)
    R = ReducedMatrix(cols, lows, list(d.dims))
    if not R.is_reduced():
        log.warning("level reduction left repeated lows; falling back to standard reduction")
        return reduce(d)
    return R


def read_positive_barcode(R: ReducedMatrix, cells, n_prefix: int, level: int) -> dict:
    """r -> list of right ends (t_max of the killing cell, or inf)."""
    partner = R.partner()
    out = defaultdict(list)
    for j in range(n_prefix):
        if R.lows[j] >= 0:
            continue
        k = partner.get(j)
        if k is None:
            out[R.dims[j]].append(INF)
        elif k >= n_prefix:
            out[R.dims[j]].append(cells[k].t_max)
    return dict(out)


def read_negative_barcode(R: ReducedMatrix, cells, n_prefix: int, level: int) -> dict:
    """r -> list of left ends (t_min of the killing cell, or -inf)."""
    partner = R.partner()
    out = defaultdict(list)
    for j in range(n_prefix):
        if R.lows[j] >= 0:
            continue
        k = partner.get(j)
        if k is None:
            out[R.dims[j]].append(-INF)
        elif k >= n_prefix:
            out[R.dims[j]].append(cells[k].t_min)
    return dict(out)


@dataclass
class PosNeg:
    """Positive and negative bar codes of the fibre at one grid level."""

    level: int
    plus: dict  # r -> sorted right ends b (t_max levels, or inf)
    minus: dict  # r -> sorted left ends a (t_min levels, or -inf)
    pairs: dict  # r -> Counter[(a, b)]
    flags: object  # KernelFlags with steps = distance from the level

    def l(self, r: int) -> int:
        return self.flags.l(r)

    def l_plus(self, r: int, t_up) -> int:
        """dim ker H_r(X_t) -> H_r(X_{t, t_up})."""
        if t_up < self.level:
            return 0
        return self.flags.kernel_dim("plus", r, t_up - self.level)

    def l_minus(self, r: int, t_down) -> int:
        """dim ker H_r(X_t) -> H_r(X_{t_down, t})."""
        if t_down > self.level:
            return 0
        return self.flags.kernel_dim("minus", r, self.level - t_down)

    def e(self, r: int, t_up, t_down) -> int:
        if t_up < self.level or t_down > self.level:
            return 0
        return self.flags.joint_dim(r, self.level - t_down, t_up - self.level)


def posneg(f: PLMap, level: int, reducer=reduce_level, stats: Stats | None = None) -> PosNeg:
    """One relative reduction of X_{-inf,t} ∪ X_{t,inf} gives B+, B- and their pairing."""
    up = upper_complex(f, level)
    down = lower_complex(f, level)
    pos = positive_order(up.cells, level).cells
    neg = negative_order(down.cells, level).cells
    prefix = [c for c in pos if c.t_max == level]
    n0 = len(prefix)
    if [c for c in neg if c.t_min == level] != prefix:
        raise InconsistencyError("positive and negative prefixes differ")
    cells = tuple(prefix) + neg[n0:] + pos[n0:]
    groups = [0] * n0 + [1] * (len(neg) - n0) + [2] * (len(pos) - n0)
    allc = CellComplex(tuple(set(cells)))
    M = boundary_matrix_gf2(allc, Ordering(cells, "relative"))
    rel = relative_reduce(M, groups, reducer)
    if stats is not None:
        stats.reductions += 1
    steps = [0] * n0 + [level - c.t_min for c in neg[n0:]] + [c.t_max - level for c in pos[n0:]]
    zm = [j for j in range(n0) if rel.minus.lows[j] < 0]
    if zm != [j for j in range(n0) if rel.plus.lows[j] < 0]:
        raise InconsistencyError("prefix zero columns differ between the two blocks")
    flags = kernel_flags(rel, steps)

    plus = read_positive_barcode(rel.plus, [cells[g] for g in rel.plus_index], n0, level)
    minus = read_negative_barcode(rel.minus, [cells[g] for g in rel.minus_index], n0, level)

    pairs = {}
    for r in flags.generators:
        pairs[r] = _pair_counts(flags, r, level)
        if len(plus.get(r, [])) != flags.l(r) or len(minus.get(r, [])) != flags.l(r):
            raise InconsistencyError("bar counts differ from the fibre Betti number")
    return PosNeg(level, {r: sorted(v) for r, v in plus.items()},
                  {r: sorted(v) for r, v in minus.items()}, pairs, flags)


def _pair_counts(flags, r: int, level: int) -> Counter:
    out = Counter()
    for (i, j), c in omega_from_flags(flags).get(r, {}).items():
        out[(level - i, level + j)] += c
    return out


# -- relevant numbers and the two methods -------------------------------------

@dataclass
class Stats:
    reductions: int = 0


@dataclass
class RelevantNumbers:
    """Tables over the interior grid (half-unit levels 2..2N)."""

    N: int
    top: int  # largest homological degree tracked
    posneg: dict  # level -> PosNeg
    i_crit: dict = field(default_factory=dict)  # r -> {(i, j): i_r(t_i, t_j)} critical indices

    def l(self, r: int, h: int) -> int:
        return self.posneg[h].l(r) if h in self.posneg else 0

    def l_plus(self, r: int, h: int, t_up: int) -> int:
        return self.posneg[h].l_plus(r, t_up) if h in self.posneg else 0

    def l_minus(self, r: int, h: int, t_down: int) -> int:
        return self.posneg[h].l_minus(r, t_down) if h in self.posneg else 0

    def e(self, r: int, h: int, t_up: int, t_down: int) -> int:
        return self.posneg[h].e(r, t_up, t_down) if h in self.posneg else 0


def relevant_from_posneg(f: PLMap, pns: dict) -> RelevantNumbers:
    top = max(f.complex.dim, 0)
    return RelevantNumbers(f.N, top, dict(pns))


def compute_relevant(f: PLMap, stats: Stats | None = None, reducer=reduce_level) -> RelevantNumbers:
    pns = {h: posneg(f, h, reducer, stats) for h in f.levels}
    return relevant_from_posneg(f, pns)


def _method1_order(cx: CellComplex, s: int, t: int) -> Ordering:
    def group(c: Cell) -> int:
        if c.t_min == c.t_max == s:
            return 0
        if c.t_min == c.t_max == t:
            return 1
        return 2

    return Ordering(tuple(sorted(cx.cells, key=lambda c: (group(c),) + c.sort_key())), "method1")


def _surviving_prefix(R: ReducedMatrix, n_prefix: int) -> dict:
    """r -> number of prefix zero columns that no column kills."""
    partner = R.partner()
    out = Counter()
    for j in range(n_prefix):
        if R.lows[j] < 0 and j not in partner:
            out[R.dims[j]] += 1
    return out


def joint_image(f: PLMap, s: int, t: int, first: str = "s", stats: Stats | None = None) -> tuple[Counter, Counter]:
    """(dim img H(X_first), dim img H(X_s ⊔ X_t)) in H(X_{s,t}), per degree."""
    cx = slab_complex(f, s, t)
    if first == "s":
        order = _method1_order(cx, s, t)
    else:
        order = _method1_order(cx, t, s)
    first_level = s if first == "s" else t
    n1 = sum(1 for c in order.cells if c.t_min == c.t_max == first_level)
    n2 = sum(1 for c in order.cells if c.t_min == c.t_max and c.t_min in (s, t))
    R = reduce(boundary_matrix_gf2(cx, order))
    if stats is not None:
        stats.reductions += 1
    return _surviving_prefix(R, n1), _surviving_prefix(R, n2)


def _empty_grid(f: PLMap, top: int) -> np.ndarray:
    n = 2 * f.N + 2
    return np.zeros((top + 1, n, n), dtype=np.int64)


def i_numbers_method1(f: PLMap, stats: Stats | None = None) -> np.ndarray:
    """i[r, h1, h2] over the half-unit grid 1..2N+1, by two reductions per pair."""
    top = max(f.complex.dim, 0)
    grid = _empty_grid(f, top)
    lv = list(f.levels)
    for h in lv:
        cx = level_complex(f, h)
        R = reduce(boundary_matrix_gf2(cx, Ordering(cx.cells)))
        if stats is not None:
            stats.reductions += 1
        for r, b in enumerate(betti_from_reduced(R)):
            grid[r, h, h] = b
    for x, s in enumerate(lv):
        for t in lv[x + 1:]:
            i_st = i_number(f, s, t, stats)
            for r in range(top + 1):
                grid[r, s, t] = i_st[r]
    return grid


def i_number(f: PLMap, s, t, stats: Stats | None = None) -> Counter:
    """r -> dim of the classes of X_{s,t} seen from both X_s and X_t (s < t)."""
    img_s, joint = joint_image(f, s, t, "s", stats)
    img_t, _ = joint_image(f, s, t, "t", stats)
    return Counter({r: img_s[r] + img_t[r] - joint[r] for r in set(img_s) | set(img_t)})


def i_numbers_method2(f: PLMap, rel: RelevantNumbers, stats: Stats | None = None) -> tuple[np.ndarray, LevelBarcode]:
    """i at critical pairs from l, l+, l- plus one joint reduction each.

    The bar code follows from the relevant numbers; the full grid (midpoints
    included) is then recounted from the bars.
    """
    top = rel.top
    for r in range(top + 1):
        rel.i_crit.setdefault(r, {})
    for i in range(1, f.N + 1):
        for r in range(top + 1):
            rel.i_crit[r][i, i] = rel.l(r, 2 * i)
        for j in range(i + 1, f.N + 1):
            s, t = 2 * i, 2 * j
            cx = slab_complex(f, s, t)
            order = _method1_order(cx, s, t)
            n2 = sum(1 for c in order.cells if c.t_min == c.t_max and c.t_min in (s, t))
            R = reduce(boundary_matrix_gf2(cx, order))
            if stats is not None:
                stats.reductions += 1
            joint = _surviving_prefix(R, n2)
            for r in range(top + 1):
                img_s = rel.l(r, s) - rel.l_plus(r, s, t)
                img_t = rel.l(r, t) - rel.l_minus(r, t, s)
                rel.i_crit[r][i, j] = img_s + img_t - joint[r]
    bars = level_barcodes_from_relevant(rel)
    return bars.i_grid(f.N, top), bars


# -- level bar codes ------------------------------------------------------------

KINDS = ("()", "(]", "[)", "[]")


@dataclass
class LevelBarcode:
    """counts[r][(kind, i, j)] over critical indices 1..N."""

    N: int
    counts: dict

    def get(self, r: int, kind: str, i: int, j: int) -> int:
        return self.counts.get(r, {}).get((kind, i, j), 0)

    def nonzero(self) -> dict:
        return {r: {k: v for k, v in c.items() if v} for r, c in self.counts.items() if any(c.values())}

    def intervals(self) -> list[BarcodeInterval]:
        out = []
        for r, c in sorted(self.counts.items()):
            for (kind, i, j), n in sorted(c.items()):
                if n:
                    out.append(BarcodeInterval(r, i, j, CLOSED if kind[0] == "[" else OPEN,
                                               CLOSED if kind[1] == "]" else OPEN, n))
        return out

    def i_grid(self, N: int, top: int) -> np.ndarray:
        """Number of bars containing [h1, h2], on the half-unit grid."""
        n = 2 * N + 2
        grid = np.zeros((top + 1, n, n), dtype=np.int64)
        for r, c in self.counts.items():
            if r > top:
                continue
            for (kind, i, j), m in c.items():
                if not m:
                    continue
                lo = 2 * i if kind[0] == "[" else 2 * i + 1
                hi = 2 * j if kind[1] == "]" else 2 * j - 1
                if lo > hi:
                    continue
                grid[r, lo:hi + 1, lo:hi + 1] += np.triu(np.full((hi - lo + 1,) * 2, m))
        return grid


def _put(counts, r, kind, i, j, v, where: str):
    if v < 0:
        raise InconsistencyError(f"negative level bar count {where} r={r} ({i},{j})")
    if v:
        counts.setdefault(r, {})[(kind, i, j)] = int(v)


def level_barcodes_from_i(grid: np.ndarray, N: int) -> LevelBarcode:
    """Second differences of i around the bar end points."""
    counts = {}
    for r in range(grid.shape[0]):
        I = grid[r]
        for k in range(1, N + 1):
            for j in range(k, N + 1):
                a, b = 2 * k, 2 * j
                _put(counts, r, "[]", k, j,
                     I[a, b] - I[a - 1, b] - I[a, b + 1] + I[a - 1, b + 1], "[]")
                if j == k:
                    continue
                _put(counts, r, "()", k, j,
                     I[a + 1, b - 1] - I[a, b - 1] - I[a + 1, b] + I[a, b], "()")
                _put(counts, r, "(]", k, j,
                     I[a + 1, b] - I[a, b] - I[a + 1, b + 1] + I[a, b + 1], "(]")
                _put(counts, r, "[)", k, j,
                     I[a, b - 1] - I[a, b] - I[a - 1, b - 1] + I[a - 1, b], "[)")
    return LevelBarcode(N, counts)


def level_barcodes_from_relevant(rel: RelevantNumbers) -> LevelBarcode:
    """Bars from l+, l-, e (at midpoints) and i at critical pairs."""
    N = rel.N
    counts = {}
    for r in range(rel.top + 1):
        ic = rel.i_crit.get(r, {})

        def n_curly(i, j):  # n{i, j}: bars meeting levels t_i and t_j
            if i < 1 or j > N:
                return 0
            return ic.get((i, j), 0)

        def n_open_right(i, j):  # n{i, j): meet t_i, open end at t_j
            if i < 1:
                return 0
            return rel.l_plus(r, 2 * i, 2 * j) - rel.l_plus(r, 2 * i, 2 * (j - 1))

        def n_open_left(i, j):  # n(i, j}: meet t_j, open end at t_i
            if i < 1 or j > N:
                return 0
            return rel.l_minus(r, 2 * j, 2 * i) - rel.l_minus(r, 2 * j, 2 * (i + 1))

        def n_closed_left(i, j):  # n[i, j}
            return n_curly(i, j) - n_curly(i - 1, j) - n_open_left(i - 1, j)

        NO = {}
        for k in range(1, N + 1):
            h = 2 * k + 1
            for j in range(k + 1, N + 1):
                v = (rel.e(r, h, 2 * j, 2 * k) - rel.e(r, h, 2 * j, 2 * k + 2)
                     - rel.e(r, h, 2 * j - 2, 2 * k) + rel.e(r, h, 2 * j - 2, 2 * k + 2))
                NO[k, j] = v
                _put(counts, r, "()", k, j, v, "()")
        co = {}
        for i in range(1, N + 1):
            for j in range(N, i, -1):
                v = n_open_left(i, j) - n_open_left(i, j + 1) - NO.get((i, j + 1), 0)
                _put(counts, r, "(]", i, j, v, "(]")
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                v = n_open_right(i, j) - n_open_right(i - 1, j) - NO.get((i - 1, j), 0)
                co[i, j] = v
                _put(counts, r, "[)", i, j, v, "[)")
        for i in range(1, N + 1):
            for j in range(i, N + 1):
                v = n_closed_left(i, j) - n_closed_left(i, j + 1) - co.get((i, j + 1), 0)
                _put(counts, r, "[]", i, j, v, "[]")
    return LevelBarcode(N, counts)


def level_barcode(f: PLMap, method: int = 2, stats: Stats | None = None):
    """(i grid, LevelBarcode) by Method 1 or Method 2."""
    stats = Stats() if stats is None else stats
    if method == 1:
        grid = i_numbers_method1(f, stats)
        return grid, level_barcodes_from_i(grid, f.N)
    rel = compute_relevant(f, stats)
    return i_numbers_method2(f, rel, stats)


# -- sub-level bar codes -------------------------------------------------------

def sublevel_from_level(lb: LevelBarcode, top: int) -> np.ndarray:
    """mu[r, i, j] over critical indices 1..N with column N+1 for inf."""
    N = lb.N
    mu = np.zeros((top + 1, N + 2, N + 2), dtype=np.int64)
    for r in range(top + 1):
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                mu[r, i, j] = lb.get(r, "[)", i, j)
            mu[r, i, N + 1] = (sum(lb.get(r, "[]", i, l) for l in range(i, N + 1))
                               + sum(lb.get(r - 1, "()", l, i) for l in range(1, i)))
    return mu


def sublevel_barcodes_direct(f: PLMap, stats: Stats | None = None) -> np.ndarray:
    """Filtration X_{-inf,t_1} ⊆ ... ⊆ X_{-inf,t_N} of the complex cut at every critical value."""
    N = f.N
    top = max(f.complex.dim, 0)
    cx = cut_complex(f.complex, [2 * k for k in range(1, N + 1)])
    step = {c: (int(c.t_max) + 1) // 2 for c in cx.cells}
    order = Ordering(tuple(sorted(cx.cells, key=lambda c: (step[c],) + c.sort_key())), "sublevel")
    R = reduce(boundary_matrix_gf2(cx, order))
    if stats is not None:
        stats.reductions += 1
    mu = np.zeros((top + 1, N + 2, N + 2), dtype=np.int64)
    for b in barcodes_from_reduced(R, [step[c] for c in order.cells]):
        j = N + 1 if b.right_kind == INFINITE else b.right + 1
        mu[b.dim, b.left, j] += b.mult
    return mu


def sublevel_lower_star(f: PLMap) -> np.ndarray:
    """Same table from the lower-star filtration of the uncut complex."""
    N = f.N
    top = max(f.complex.dim, 0)
    cells = sorted(f.complex.cells, key=lambda s: (s[-1], len(s), s))
    order = Ordering(tuple(cells), "lower-star")
    R = reduce(boundary_matrix_gf2(f.complex, order))
    mu = np.zeros((top + 1, N + 2, N + 2), dtype=np.int64)
    for b in barcodes_from_reduced(R, [s[-1] for s in cells]):
        j = N + 1 if b.right_kind == INFINITE else b.right + 1
        mu[b.dim, b.left, j] += b.mult
    return mu
