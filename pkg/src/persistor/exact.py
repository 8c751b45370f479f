"""Exact linear algebra used by the oracles.

Two flavours live here. GF(2) vectors are python ints used as bitmasks,
which keeps rank and span computations cheap. Small dense matrices over
GF(2) or the rationals go through a tiny field-generic layer (lists of
lists) used by the module decomposition oracle.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

# -- GF(2) bitmasks -----------------------------------------------------------

def to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m ^= 1 << i
    return m


def from_mask(mask: int) -> set[int]:
    out = set()
    i = 0
    while mask:
        if mask & 1:
            out.add(i)
        mask >>= 1
        i += 1
    return out


def gf2_basis(vectors: Iterable[int]) -> dict[int, int]:
    """Echelon basis keyed by leading bit."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return basis


def gf2_rank(vectors: Iterable[int]) -> int:
    return len(gf2_basis(vectors))


def gf2_intersection_dim(a: Sequence[int], b: Sequence[int]) -> int:
    return gf2_rank(a) + gf2_rank(b) - gf2_rank(list(a) + list(b))


def gf2_nullspace(columns: Sequence[int]) -> list[int]:
    """Kernel of the map whose j-th column is columns[j]; kernel vectors are masks over column indices."""
    basis: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, col in enumerate(columns):
        v, comb = col, 1 << j
        while v:
            top = v.bit_length() - 1
            if top in basis:
                bv, bc = basis[top]
                v ^= bv
                comb ^= bc
            else:
                basis[top] = (v, comb)
                break
        if not v:
            kernel.append(comb)
    return kernel


# -- integer / rational rank --------------------------------------------------

def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix via fraction-free (Bareiss) elimination."""
    m = [list(map(int, r)) for r in rows]
    if not m or not m[0]:
        return 0
    nr, nc = len(m), len(m[0])
    rank, prev = 0, 1
    for c in range(nc):
        piv = next((r for r in range(rank, nr) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for r in range(rank + 1, nr):
            a = m[r][c]
            row, prow = m[r], m[rank]
            for k in range(c, nc):
                row[k] = (p * row[k] - a * prow[k]) // prev
        prev = p
        rank += 1
        if rank == nr:
            break
    return rank


# -- small field-generic matrices ---------------------------------------------

@dataclass(frozen=True)
class Field:
    name: str
    coerce: Callable[[int], object]
    add: Callable
    sub: Callable
    mul: Callable
    inv: Callable

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)


def _gf2_inv(a):
    if a % 2 == 0:
        raise ZeroDivisionError("0 has no inverse")
    return 1


GF2 = Field(
    "gf2",
    coerce=lambda x: int(x) % 2,
    add=lambda a, b: (a + b) % 2,
    sub=lambda a, b: (a - b) % 2,
    mul=lambda a, b: (a * b) % 2,
    inv=_gf2_inv,
)

QQ = Field(
    "rational",
    coerce=Fraction,
    add=lambda a, b: a + b,
    sub=lambda a, b: a - b,
    mul=lambda a, b: a * b,
    inv=lambda a: 1 / Fraction(a),
)

Matrix = list  # list of rows


def zeros(nr: int, nc: int, F: Field) -> Matrix:
    return [[F.zero] * nc for _ in range(nr)]


def identity(n: int, F: Field) -> Matrix:
    m = zeros(n, n, F)
    for i in range(n):
        m[i][i] = F.one
    return m


def matmul(a: Matrix, b: Matrix, F: Field, inner: int | None = None) -> Matrix:
    nr = len(a)
    k = inner if inner is not None else (len(a[0]) if a else len(b))
    nc = len(b[0]) if b else 0
    out = zeros(nr, nc, F)
    for i in range(nr):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x == 0:
                continue
            bt = b[t]
            for j in range(nc):
                if bt[j] != 0:
                    oi[j] = F.add(oi[j], F.mul(x, bt[j]))
    return out


def matvec(a: Matrix, v: list, F: Field) -> list:
    return [_dot(row, v, F) for row in a]


def _dot(u, v, F: Field):
    s = F.zero
    for x, y in zip(u, v):
        if x != 0 and y != 0:
            s = F.add(s, F.mul(x, y))
    return s


def rref(m: Matrix, F: Field) -> tuple[Matrix, list[int]]:
    a = [list(r) for r in m]
    nr = len(a)
    nc = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, x) for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return a, pivots


def rank(m: Matrix, F: Field) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m, F)[1])


def inverse(m: Matrix, F: Field) -> Matrix:
    n = len(m)
    aug = [list(row) + e for row, e in zip(m, identity(n, F))]
    red, piv = rref(aug, F)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def random_invertible(n: int, F: Field, rng) -> Matrix:
    while True:
        if F.name == "gf2":
            m = [[F.coerce(rng.integers(0, 2)) for _ in range(n)] for _ in range(n)]
        else:
            m = [[F.coerce(int(rng.integers(-3, 4))) for _ in range(n)] for _ in range(n)]
        if rank(m, F) == n:
            return m
