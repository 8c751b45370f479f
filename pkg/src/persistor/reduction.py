"""GF(2) column reduction, persistence pairing and simultaneous persistence."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from persistor import exact
from persistor.complex import BoundaryMatrix
from persistor.errors import InconsistencyError, InvalidOrderingError
from persistor.persistence_algebra import INF, INFINITE, BarcodeInterval


@dataclass
class ReducedMatrix:
    columns: list  # list[set[int]]
    lows: list  # row of the lowest one, -1 for a zero column
    dims: list
    V: list | None = None

    @property
    def n(self) -> int:
        return len(self.columns)

    def partner(self) -> dict:
        """low row -> column having that low."""
        return {l: j for j, l in enumerate(self.lows) if l >= 0}

    def is_reduced(self) -> bool:
        seen = [l for l in self.lows if l >= 0]
        return len(seen) == len(set(seen))


def _low(col: set) -> int:
    return max(col) if col else -1


def reduce(d: BoundaryMatrix, track_v: bool = False) -> ReducedMatrix:
    """Left to right: add earlier columns into column j until its low is unique."""
    cols = [set(c) for c in d.columns]
    V = [{j} for j in range(len(cols))] if track_v else None
    pivot: dict[int, int] = {}
    lows = [-1] * len(cols)
    for j, col in enumerate(cols):
        l = _low(col)
        while l >= 0 and l in pivot:
            j0 = pivot[l]
            col ^= cols[j0]
            if V is not None:
                V[j] ^= V[j0]
            l = _low(col)
        lows[j] = l
        if l >= 0:
            pivot[l] = j
    return ReducedMatrix(cols, lows, list(d.dims), V)


def check_reduction(d: BoundaryMatrix, R: ReducedMatrix) -> bool:
    """R is reduced and, when V is tracked, R = d V over GF(2)."""
    if not R.is_reduced():
        return False
    if R.V is None:
        return True
    for j, vj in enumerate(R.V):
        acc = set()
        for k in vj:
            acc ^= d.columns[k]
        if acc != R.columns[j]:
            return False
    return True


def betti_from_reduced(R: ReducedMatrix) -> list[int]:
    top = max(R.dims, default=-1)
    zero = [0] * (top + 2)
    nonzero = [0] * (top + 2)
    for j, l in enumerate(R.lows):
        if l < 0:
            zero[R.dims[j]] += 1
        else:
            nonzero[R.dims[j]] += 1
    b = [zero[k] - nonzero[k + 1] for k in range(top + 1)]
    if any(x < 0 for x in b):
        raise InconsistencyError(f"negative Betti number {b}")
    return b


def barcodes_from_reduced(R: ReducedMatrix, f_ind, dims=None) -> list[BarcodeInterval]:
    """Sub-level bars [f(j), f(k) - 1] for low(k) = j, and [f(j), inf] for unpaired j."""
    dims = R.dims if dims is None else dims
    partner = R.partner()
    bars = []
    for j, l in enumerate(R.lows):
        if l >= 0:
            continue
        k = partner.get(j)
        if k is None:
            bars.append(BarcodeInterval(dims[j], f_ind[j], INF, right_kind=INFINITE))
        elif f_ind[k] < f_ind[j]:
            raise InvalidOrderingError(f"column {k} kills {j} before it is born")
        elif f_ind[k] > f_ind[j]:
            bars.append(BarcodeInterval(dims[j], f_ind[j], f_ind[k] - 1))
    return bars


# -- homology coordinates -----------------------------------------------------

@dataclass
class HomologyBasis:
    """Basis of H(K) for K the first n cells, read off a V-tracked reduction."""

    boundaries: dict  # low -> reduced boundary column
    generators: dict  # unpaired positive column j -> cycle z_j
    dims: list

    @classmethod
    def from_reduced(cls, R: ReducedMatrix, n: int | None = None) -> HomologyBasis:
        if R.V is None:
            raise ValueError("homology coordinates need a V-tracked reduction")
        n = R.n if n is None else n
        bnd = {R.lows[k]: R.columns[k] for k in range(n) if R.lows[k] >= 0}
        gens = {j: R.V[j] for j in range(n) if R.lows[j] < 0 and j not in bnd}
        return cls(bnd, gens, R.dims[:n])

    def generators_of_dim(self, r: int) -> list[int]:
        return sorted(j for j in self.generators if self.dims[j] == r)

    def coordinates(self, chain) -> set[int]:
        """Generators whose classes sum to the class of the cycle `chain`."""
        c = set(chain)
        coords = set()
        while c:
            l = max(c)
            if l in self.boundaries:
                c ^= self.boundaries[l]
            elif l in self.generators:
                c ^= self.generators[l]
                coords ^= {l}
            else:
                raise InconsistencyError("chain is not a cycle of the prefix")
        return coords


# -- simultaneous persistence -------------------------------------------------

@dataclass
class RelativeReducedMatrix:
    """Groups I (X0), II (X- minus X0), III (X+ minus X0), each reduced with I."""

    n0: int
    minus: ReducedMatrix  # columns I then II
    plus: ReducedMatrix  # columns I then III
    minus_index: list  # local column -> global column
    plus_index: list
    basis: HomologyBasis  # H(X0)


def relative_reduce(M: BoundaryMatrix, groups: list, reducer=reduce) -> RelativeReducedMatrix:
    """Reduce the I+II and I+III blocks of M.

    The two blocks share the group I columns. They are reduced separately,
    because a group II column and a group III column can share a low inside
    group I; pooling them would add X- chains into X+ columns.
    """
    I = [g for g, k in enumerate(groups) if k == 0]
    II = [g for g, k in enumerate(groups) if k == 1]
    III = [g for g, k in enumerate(groups) if k == 2]
    if I + II + III != list(range(len(groups))):
        raise InvalidOrderingError("cells must be ordered group I, then II, then III")
    n0 = len(I)
    Rm = reducer(M.submatrix(I + II))
    Rp = reducer(M.submatrix(I + III))
    for R in (Rm, Rp):
        if not R.is_reduced():
            raise InconsistencyError("relative block is not reduced")
    basis = HomologyBasis.from_reduced(reduce(M.submatrix(I), track_v=True))
    return RelativeReducedMatrix(n0, Rm, Rp, I + II, I + III, basis)


@dataclass
class KernelFlags:
    """Per dimension: generator ids and the deaths of H(X0) on each side.

    A death is (step, mask) with mask the class of the killed cycle in the
    generator basis. Spans of deaths up to a step are the kernels
    H(X0) -> H(X-_i) and H(X0) -> H(X+_j).
    """

    generators: dict = field(default_factory=dict)  # r -> list of generator columns
    minus: dict = field(default_factory=dict)  # r -> list[(step, mask)]
    plus: dict = field(default_factory=dict)

    def l(self, r: int) -> int:
        return len(self.generators.get(r, []))

    def kernel_dim(self, side: str, r: int, upto) -> int:
        deaths = getattr(self, side).get(r, [])
        return exact.gf2_rank([m for s, m in deaths if s <= upto])

    def joint_dim(self, r: int, minus_upto, plus_upto) -> int:
        """dim( ker to X-_i  ∩  ker to X+_j ); an infinite step means the whole space."""
        full = [1 << k for k in range(self.l(r))]
        a = full if minus_upto == INF else [m for s, m in self.minus.get(r, []) if s <= minus_upto]
        b = full if plus_upto == INF else [m for s, m in self.plus.get(r, []) if s <= plus_upto]
        return exact.gf2_intersection_dim(a, b)


def kernel_flags(rel: RelativeReducedMatrix, steps: list) -> KernelFlags:
    """Express every column that kills a cycle of X0 in homology coordinates."""
    flags = KernelFlags()
    gens = defaultdict(list)
    for j in sorted(rel.basis.generators):
        gens[rel.basis.dims[j]].append(j)
    pos = {r: {j: k for k, j in enumerate(js)} for r, js in gens.items()}
    flags.generators = dict(gens)
    for side, R, index in (("minus", rel.minus, rel.minus_index), ("plus", rel.plus, rel.plus_index)):
        out = defaultdict(list)
        for k in range(rel.n0, R.n):
            l = R.lows[k]
            if 0 <= l < rel.n0:
                r = R.dims[l]
                coords = rel.basis.coordinates(R.columns[k])
                if not coords:
                    raise InconsistencyError("a death column kills a boundary")
                mask = exact.to_mask(pos[r][j] for j in coords)
                out[r].append((steps[index[k]], mask))
        setattr(flags, side, dict(out))
    return flags


def omega_from_flags(flags: KernelFlags) -> dict:
    """r -> {(i, j): n}: classes dying at minus step i and plus step j.

    Counts are second differences of dim(K-_i ∩ K+_j), which does not
    depend on the chosen basis. Matching death columns one by one does
    not work: with classes A, B, C killed as A+C on one side and B+C on
    the other, both columns share the low C but no class dies on both.
    inf means the class never dies on that side.
    """
    out = {}
    for r in flags.generators:
        sm = sorted({s for s, _ in flags.minus.get(r, [])}) + [INF]
        sp = sorted({s for s, _ in flags.plus.get(r, [])}) + [INF]
        D = {}
        for i in [None] + sm:
            for j in [None] + sp:
                D[i, j] = 0 if i is None or j is None else flags.joint_dim(r, i, j)
        counts = {}
        for a, i in enumerate(sm):
            ip = None if a == 0 else sm[a - 1]
            for b, j in enumerate(sp):
                jp = None if b == 0 else sp[b - 1]
                c = D[i, j] - D[ip, j] - D[i, jp] + D[ip, jp]
                if c < 0:
                    raise InconsistencyError("negative simultaneous count")
                if c:
                    counts[i, j] = c
        out[r] = counts
    return out


def simultaneous_numbers(rel: RelativeReducedMatrix, steps: list) -> dict:
    """omega[r][(i, j)] from a relative reduction.

    `steps` gives the filtration step of every global column (group I
    columns are ignored).
    """
    return omega_from_flags(kernel_flags(rel, steps))
