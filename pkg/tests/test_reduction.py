import numpy as np
import pytest
from conftest import HOLLOW_TRIANGLE, TETRA_SURFACE, simplex_lists
from hypothesis import given
from hypothesis import strategies as st

from persistor import exact
from persistor.complex import (
    BoundaryMatrix,
    Ordering,
    boundary_matrix_gf2,
    build_complex,
    compatible_ordering,
    initial_ordering,
)
from persistor.errors import InvalidOrderingError
from persistor.persistence_algebra import INFINITE, normalize
from persistor.reduction import (
    KernelFlags,
    barcodes_from_reduced,
    betti_from_reduced,
    check_reduction,
    omega_from_flags,
    reduce,
    relative_reduce,
    simultaneous_numbers,
)
from persistor.rips import distance_matrix, rips_filtration


def reduced(simplices):
    K = build_complex(simplices)
    return K, reduce(boundary_matrix_gf2(K, initial_ordering(K)))


def gf2_betti(K):
    """dim C_r - rank d_{r+1} - rank d_r by elimination on bitmasks."""
    idx = {s: i for i, s in enumerate(K.cells)}
    rank = {}
    for r in range(K.dim + 2):
        cols = [exact.to_mask(idx[t] for t in K.facets(s)) for s in K.of_dim(r)] if r > 0 else []
        rank[r] = exact.gf2_rank(cols)
    return [len(K.of_dim(r)) - rank[r + 1] - rank[r] for r in range(K.dim + 1)]


def test_zero_matrix_unchanged():
    d = BoundaryMatrix([set(), set(), set()], [0, 0, 0])
    R = reduce(d)
    assert R.lows == [-1, -1, -1]


def test_single_edge():
    _, R = reduced([(1, 2)])
    assert R.lows == [-1, -1, 1]


def test_hollow_triangle_reduction():
    _, R = reduced(HOLLOW_TRIANGLE)
    edge_lows = R.lows[3:]
    assert edge_lows.count(-1) == 1
    assert len({l for l in edge_lows if l >= 0}) == 2


@pytest.mark.parametrize("simplices, betti", [
    (HOLLOW_TRIANGLE, [1, 1]),
    ([(1, 2, 3)], [1, 0, 0]),
    (TETRA_SURFACE, [1, 0, 1]),
])
def test_betti_examples(simplices, betti):
    _, R = reduced(simplices)
    assert betti_from_reduced(R) == betti


def rips_bars(points, m=2):
    D = distance_matrix(np.array(points, dtype=float))
    f = rips_filtration(D, m, 10**6 if len(points) > 1 else 0)
    return normalize(barcodes_from_reduced(reduce(f.boundary()), f.steps()))


def test_equilateral_triangle_bars():
    bars = rips_bars([[0, 0], [1, 0], [0.5, np.sqrt(3) / 2]])
    assert bars == {(0, 0, np.inf, "closed", INFINITE): 1, (0, 0, 0, "closed", "closed"): 2}


def test_two_points_and_one_point():
    assert rips_bars([[0, 0], [1, 0]]) == {(0, 0, np.inf, "closed", INFINITE): 1, (0, 0, 0, "closed", "closed"): 1}
    assert rips_bars([[0, 0]]) == {(0, 0, np.inf, "closed", INFINITE): 1}


def test_death_before_birth_rejected():
    K = build_complex([(1, 2)])
    R = reduce(boundary_matrix_gf2(K, initial_ordering(K)))
    with pytest.raises(InvalidOrderingError):
        barcodes_from_reduced(R, [1, 1, 0])




def two_arc_circle():
    # X0 = {1, 2}; X- adds the arc through 3, X+ the arc through 4
    K = build_complex([(1, 3), (2, 3), (1, 4), (2, 4)])
    cells = [(1,), (2,), (3,), (1, 3), (2, 3), (4,), (1, 4), (2, 4)]
    M = boundary_matrix_gf2(K, Ordering(tuple(cells)))
    return M, [0, 0, 1, 1, 1, 2, 2, 2], [0, 0, 1, 1, 1, 1, 1, 1]


def finite(omega):
    return {r: {k: v for k, v in c.items() if np.inf not in k} for r, c in omega.items()}


def test_two_arc_circle_omega():
    M, groups, steps = two_arc_circle()
    rel = relative_reduce(M, groups)
    om = simultaneous_numbers(rel, steps)
    assert finite(om) == {0: {(1, 1): 1}}
    assert om[0][(np.inf, np.inf)] == 1


def test_degenerate_split_is_plain_reduce():
    K = build_complex(HOLLOW_TRIANGLE)
    M = boundary_matrix_gf2(K, initial_ordering(K))
    rel = relative_reduce(M, [0] * M.n)
    assert rel.minus.lows == reduce(M).lows
    om = simultaneous_numbers(rel, [0] * M.n)
    assert finite(om) == {0: {}, 1: {}}


def test_edge_joining_two_points():
    # X- and X+ are two copies of an edge on the same endpoints; only the
    # combinatorics of the blocks matters, so the plus copy is a path 1-3-2
    K = build_complex([(1, 2), (1, 3), (2, 3)])
    cells = [(1,), (2,), (1, 2), (3,), (1, 3), (2, 3)]
    M = boundary_matrix_gf2(K, Ordering(tuple(cells)))
    om = simultaneous_numbers(relative_reduce(M, [0, 0, 1, 2, 2, 2]), [0, 0, 1, 1, 1, 1])
    assert finite(om)[0] == {(1, 1): 1}


def test_cone_kills_cycle_only_upward():
    K = build_complex(HOLLOW_TRIANGLE + [(1, 2, 4), (1, 3, 4), (2, 3, 4)])
    cells = [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (4,), (1, 4), (2, 4), (3, 4),
             (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    M = boundary_matrix_gf2(K, Ordering(tuple(cells)))
    groups = [0] * 6 + [2] * 7
    om = simultaneous_numbers(relative_reduce(M, groups), [0] * 6 + [1] * 7)
    assert finite(om)[1] == {}
    assert om[1] == {(np.inf, 1): 1}


def test_shared_low_does_not_make_a_pair():
    # classes A, B, C; B+C dies below and A+C above at step 1
    flags = KernelFlags({0: [0, 1, 2]}, minus={0: [(1, 0b110)]}, plus={0: [(1, 0b101)]})
    om = omega_from_flags(flags)[0]
    assert (1, 1) not in om
    assert om[(1, np.inf)] == 1 and om[(np.inf, 1)] == 1 and om[(np.inf, np.inf)] == 1


@given(simplex_lists())
def test_reduction_is_dv(simplices):
    K = build_complex(simplices)
    d = boundary_matrix_gf2(K, initial_ordering(K))
    R = reduce(d, track_v=True)
    assert check_reduction(d, R)


@given(simplex_lists(max_size=5))
def test_betti_matches_rank_nullity(simplices):
    K, R = reduced(simplices)
    assert betti_from_reduced(R) == gf2_betti(K)


@given(simplex_lists(max_vertex=5, max_len=5), st.data())
def test_tie_shuffle_keeps_bars(simplices, data):
    K = build_complex(simplices)
    f = {}
    for s in sorted(K.cells, key=len):
        lo = max((f[t] for t in K.facets(s)), default=0)
        f[s] = data.draw(st.integers(lo, lo + 1))
    base = compatible_ordering(K, f).cells
    # random order within steps that still puts faces first
    keys = {s: data.draw(st.floats(0, 1)) for s in K.cells}
    shuffled = tuple(sorted(base, key=lambda s: (f[s], len(s), keys[s])))
    bars = []
    for order in (base, shuffled):
        R = reduce(boundary_matrix_gf2(K, Ordering(order)))
        bars.append(normalize(barcodes_from_reduced(R, [f[s] for s in order])))
    assert bars[0] == bars[1]


@given(simplex_lists(max_vertex=6, max_len=6), st.data())
def test_bars_count_homology_of_each_step(simplices, data):
    K = build_complex(simplices)
    f = {}
    for s in sorted(K.cells, key=len):
        lo = max((f[t] for t in K.facets(s)), default=0)
        f[s] = data.draw(st.integers(lo, lo + 2))
    order = compatible_ordering(K, f).cells
    bars = barcodes_from_reduced(reduce(boundary_matrix_gf2(K, Ordering(order))), [f[s] for s in order])
    for s in range(max(f.values()) + 1):
        Ks = build_complex([c for c in K.cells if f[c] <= s])
        b = gf2_betti(Ks)
        for r, br in enumerate(b):
            assert br == sum(x.mult for x in bars if x.dim == r and x.contains(s, s))
