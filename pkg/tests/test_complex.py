import numpy as np
import pytest
from conftest import EX45, simplex_lists
from hypothesis import given
from hypothesis import strategies as st

from persistor import exact
from persistor.complex import (
    Cell,
    Ordering,
    boundary_matrix_gf2,
    boundary_matrix_real,
    build_complex,
    compatible_ordering,
    cut_complex,
    initial_ordering,
    read_simplex_file,
    skeleton,
)
from persistor.errors import InputError, InvalidFiltrationError, MalformedSimplexError


def names(cells):
    return ["".join(map(str, c)) for c in cells]


def test_closure_of_one_triangle():
    K = build_complex([(2, 3, 5)])
    assert set(K.cells) == {(2,), (3,), (5,), (2, 3), (2, 5), (3, 5), (2, 3, 5)}
    assert K.closure_added


def test_example_complex_has_sixteen_cells():
    K = build_complex(EX45)
    assert len(K) == 16
    assert K.counts == [6, 9, 1]


def test_empty_complex():
    K = build_complex([])
    assert len(K) == 0 and K.dim == -1


def test_repeated_vertex_is_malformed():
    with pytest.raises(MalformedSimplexError):
        build_complex([(1, 1, 2)])


def test_initial_order_of_example():
    K = build_complex(EX45)
    order = initial_ordering(K)
    assert "<".join(names(order.cells)) == "1<2<3<4<5<6<12<13<23<24<25<35<36<45<56<235"


def test_edge_boundary_column():
    K = build_complex([(1, 2)])
    d = boundary_matrix_gf2(K, initial_ordering(K))
    assert d.columns == [set(), set(), {0, 1}]


def test_triangle_boundary_column():
    K = build_complex([(1, 2, 3)])
    order = initial_ordering(K)
    d = boundary_matrix_gf2(K, order)
    assert d.n == 7
    idx = order.index
    assert d.columns[idx[(1, 2, 3)]] == {idx[(1, 2)], idx[(1, 3)], idx[(2, 3)]}


def test_example_triangle_column():
    K = build_complex(EX45)
    order = initial_ordering(K)
    d = boundary_matrix_gf2(K, order)
    # column 16, 1-based rows of 23, 25, 35
    assert sorted(i + 1 for i in d.columns[15]) == [9, 11, 12]


def test_real_boundary_signs_compose_to_zero():
    K = build_complex([(1, 2)])
    d1 = boundary_matrix_real(K, 1)
    assert d1[:, 0].tolist() == [-1.0, 1.0]
    T = build_complex([(1, 2, 3)])
    assert not np.any(boundary_matrix_real(T, 1) @ boundary_matrix_real(T, 2))


def test_three_simplex_ranks():
    K = build_complex([(1, 2, 3, 4)])
    ranks = [exact.rational_rank(boundary_matrix_real(K, r).astype(int).tolist()) for r in (1, 2, 3)]
    assert ranks == [3, 3, 1]


def test_real_boundary_out_of_range_is_empty():
    K = build_complex([(1, 2)])
    assert boundary_matrix_real(K, 2).shape == (1, 0)
    assert boundary_matrix_real(K, 0).shape == (0, 2)


def test_single_step_filtration_is_initial_order():
    K = build_complex([(1, 2, 3)])
    assert compatible_ordering(K, {s: 0 for s in K.cells}).cells == initial_ordering(K).cells


def test_three_point_filtration_order():
    K = build_complex([(1, 2, 3)])
    f = {(1,): 0, (2,): 0, (3,): 0, (1, 2): 1, (2, 3): 2, (1, 3): 3, (1, 2, 3): 3}
    assert names(compatible_ordering(K, f).cells) == ["1", "2", "3", "12", "23", "13", "123"]


def test_non_monotone_filtration_rejected():
    K = build_complex([(1, 2)])
    with pytest.raises(InvalidFiltrationError):
        compatible_ordering(K, {(1,): 0, (2,): 2, (1, 2): 1})


def test_skeleton_examples():
    K4 = skeleton(build_complex([(1, 2, 3, 4)]), 1)
    assert K4.counts == [4, 6]
    K = build_complex(EX45)
    assert skeleton(K, 5).cells == K.cells
    assert set(skeleton(K, 1).cells) == set(K.cells) - {(2, 3, 5)}


def test_read_simplex_file(tmp_path):
    p = tmp_path / "k.txt"
    p.write_text("# comment\n1 2 3\n\n2 4 # trailing\n")
    K = read_simplex_file(p)
    assert K.counts == [4, 4, 1]
    p.write_text("1 x\n")
    with pytest.raises(InputError):
        read_simplex_file(p)


def test_cell_labels():
    assert str(Cell((2, 5), 8, 8)) == "25|4"
    assert str(Cell((2, 5), 8)) == "25|4,inf"
    assert str(Cell((1, 3), 3, 5)) == "13|1.5,2.5"


def test_cut_complex_is_closed():
    K = build_complex([(1, 2, 3, 4)])
    cx = cut_complex(K, [3, 5, 6], 3, 6)
    d = boundary_matrix_gf2(cx, Ordering(cx.cells))
    assert d.is_upper_triangular()


@given(simplex_lists())
def test_build_is_idempotent(simplices):
    K = build_complex(simplices)
    K2 = build_complex(K.cells)
    assert K2.cells == K.cells and not K2.closure_added


@given(simplex_lists(), st.data())
def test_boundary_upper_triangular_for_compatible_orders(simplices, data):
    K = build_complex(simplices)
    f = {}
    for s in sorted(K.cells, key=len):
        lo = max((f[t] for t in K.facets(s)), default=0)
        f[s] = data.draw(st.integers(lo, lo + 2))
    d = boundary_matrix_gf2(K, compatible_ordering(K, f))
    assert d.is_upper_triangular()


@given(simplex_lists(max_size=5))
def test_real_boundary_squares_to_zero(simplices):
    K = build_complex(simplices)
    for r in range(2, K.dim + 1):
        prod = boundary_matrix_real(K, r - 1).astype(int) @ boundary_matrix_real(K, r).astype(int)
        assert not prod.any()


@given(simplex_lists(), st.lists(st.integers(2, 14), max_size=3), st.integers(0, 14), st.integers(0, 6))
def test_cut_complexes_are_face_closed(simplices, cuts, lb, width):
    K = build_complex(simplices)
    cx = cut_complex(K, cuts + [lb, lb + width], lb, lb + width)
    d = boundary_matrix_gf2(cx, Ordering(cx.cells))
    assert d.is_upper_triangular()
