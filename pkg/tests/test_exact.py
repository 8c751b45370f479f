from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from persistor import exact

small_int_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


def fraction_rank(rows):
    m = [[Fraction(x) for x in row] for row in rows]
    return exact.rank(m, exact.QQ)


@given(small_int_matrices)
def test_bareiss_rank_matches_fraction_elimination(rows):
    assert exact.rational_rank(rows) == fraction_rank(rows)


@given(small_int_matrices)
def test_bareiss_rank_matches_numpy_on_small_integers(rows):
    assert exact.rational_rank(rows) == np.linalg.matrix_rank(np.array(rows, dtype=float))


@given(st.lists(st.integers(0, 63), max_size=8))
def test_gf2_rank_matches_field_elimination(vectors):
    rows = [[(v >> k) & 1 for k in range(6)] for v in vectors]
    expect = exact.rank(rows, exact.GF2) if rows else 0
    assert exact.gf2_rank(vectors) == expect


@given(st.lists(st.integers(0, 31), max_size=7))
def test_gf2_nullspace_vectors_are_in_the_kernel(columns):
    ker = exact.gf2_nullspace(columns)
    for mask in ker:
        acc = 0
        for j in exact.from_mask(mask):
            acc ^= columns[j]
        assert acc == 0
    assert len(ker) == len(columns) - exact.gf2_rank(columns)
    assert exact.gf2_rank(ker) == len(ker)


@given(st.lists(st.integers(0, 31), max_size=5), st.lists(st.integers(0, 31), max_size=5))
def test_intersection_dimension_formula(a, b):
    d = exact.gf2_intersection_dim(a, b)
    assert d == exact.gf2_rank(a) + exact.gf2_rank(b) - exact.gf2_rank(a + b)


def test_masks_round_trip():
    assert exact.from_mask(exact.to_mask([0, 3, 5])) == {0, 3, 5}
    assert exact.to_mask([]) == 0


def test_random_invertible_has_inverse():
    rng = np.random.default_rng(1)
    for F in (exact.GF2, exact.QQ):
        A = exact.random_invertible(4, F, rng)
        assert exact.matmul(A, exact.inverse(A, F), F) == exact.identity(4, F)
