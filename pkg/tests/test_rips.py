import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from persistor.complex import build_complex, compatible_ordering
from persistor.errors import DegenerateCloudError, DuplicatePointError, InputError
from persistor.persistence_algebra import barcode_multiset_equal
from persistor.rips import (
    FilteredComplex,
    RipsConfig,
    distance_matrix,
    edge_steps,
    elz_bars,
    epsilon_schedule,
    merged_levels,
    read_points,
    rips_filtration,
    rips_filtration_naive,
    rips_pipeline,
    scale_points,
)

TRIANGLE = np.array([[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]])
SQUARE = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)

# coordinates on a 0.01 grid; ties between distances are common on purpose
clouds = st.integers(2, 7).flatmap(lambda p: st.lists(
    st.tuples(st.integers(0, 1000), st.integers(0, 1000)),
    min_size=p, max_size=p, unique=True)).map(lambda pts: [(x / 100, y / 100) for x, y in pts])


def test_distance_examples():
    assert distance_matrix(np.array([[0, 0], [3, 4]]))[0, 1] == 5
    D = distance_matrix(TRIANGLE)
    assert np.allclose(D[~np.eye(3, dtype=bool)], 1)
    D = distance_matrix(SQUARE)
    assert np.allclose(sorted(D[np.triu_indices(4, 1)]), [1, 1, 1, 1, math.sqrt(2), math.sqrt(2)])


def test_duplicate_points_rejected():
    with pytest.raises(DuplicatePointError):
        distance_matrix(np.array([[0, 0], [1, 1], [0, 0]]))


def test_scale_is_noop_for_wide_gaps():
    pts, c = scale_points(SQUARE)
    assert c == 1.0 and np.array_equal(pts, SQUARE)


def test_round_off_duplicates_merge():
    D = np.array([[0, 1, 1 + 1e-16], [1, 0, 2], [1 + 1e-16, 2, 0]])
    assert merged_levels(D).tolist() == [0, 1, 2]


def test_tiny_gap_is_rescaled():
    pts = np.array([[0, 0], [1, 0], [0, 1 + 1e-5]])
    scaled, c = scale_points(pts)
    assert c >= 30
    assert np.diff(merged_levels(distance_matrix(scaled))).min() > RipsConfig().min_gap


def test_scale_needs_two_points():
    with pytest.raises(DegenerateCloudError):
        scale_points(np.zeros((1, 2)))


def test_schedules():
    s = epsilon_schedule(distance_matrix(TRIANGLE), 5)
    assert s.N == 1 and np.allclose(s.eps, (0, 1)) and s.P == 1
    s = epsilon_schedule(distance_matrix(SQUARE), 5)
    assert np.allclose(s.eps, (0, 1, math.sqrt(2)))
    s = epsilon_schedule(distance_matrix(SQUARE), 0)
    assert s.P == 0
    f = rips_filtration(distance_matrix(SQUARE), 2, 0)
    assert f.complex.counts == [4]


def test_triangle_filtration():
    f = rips_filtration(distance_matrix(TRIANGLE), 2, 1)
    assert {s: v for s, v in f.f_ind.items()} == {
        (1,): 0, (2,): 0, (3,): 0, (1, 2): 1, (1, 3): 1, (2, 3): 1, (1, 2, 3): 1}


def test_collinear_points():
    D = distance_matrix(np.array([[0.0, 0], [1, 0], [2, 0]]))
    f = rips_filtration(D, 2, 2)
    assert f.f_ind[(1, 3)] == 2 == f.f_ind[(1, 2, 3)]


def test_five_points_give_eleven_epsilons_and_the_four_simplex():
    pts = np.array([[0, 0], [1.0, 0.1], [0.3, 1.7], [2.2, 0.9], [1.4, 2.6]])
    res = rips_pipeline(pts, 4, 100)
    assert len(res.schedule.eps) == 11
    assert res.filtration.at_step(res.schedule.P).cells == build_complex([(1, 2, 3, 4, 5)]).cells


def test_dimension_table():
    f = rips_filtration(distance_matrix(SQUARE), 2, 2)
    assert f.dimension[:, 0].tolist() == [4, 0, 0]
    assert (np.diff(f.dimension, axis=1) >= 0).all()


def test_from_steps_requires_all_faces():
    with pytest.raises(InputError):
        FilteredComplex.from_steps({(1, 2): 0})


def test_read_points(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("# x,y\n0,0\n1, 2\n")
    assert read_points(p).tolist() == [[0, 0], [1, 2]]
    p.write_text("0 0\n1\n")
    with pytest.raises(InputError):
        read_points(p)


@given(clouds, st.integers(0, 3), st.integers(0, 12))
def test_expansion_matches_subset_scan(pts, m, S):
    D = distance_matrix(np.array(pts))
    sched = epsilon_schedule(D, S)
    a = rips_filtration(D, m, sched.P, sched)
    b = rips_filtration_naive(D, m, sched.P, sched)
    assert a.f_ind == b.f_ind


@given(clouds, st.integers(1, 3), st.integers(0, 12))
def test_filtration_is_monotone_and_clique(pts, m, S):
    D = distance_matrix(np.array(pts))
    sched = epsilon_schedule(D, S)
    f = rips_filtration(D, m, sched.P, sched)
    compatible_ordering(f.complex, f.f_ind)  # raises on a monotonicity violation
    est = edge_steps(D, sched)
    for s, v in f.f_ind.items():
        edges = [int(est[a - 1, b - 1]) for a, b in itertools.combinations(s, 2)]
        assert v == max(edges, default=0)
    assert f.dimension[0, 0] == len(pts)


@given(clouds)
def test_full_schedule_ends_in_full_simplex(pts):
    D = distance_matrix(np.array(pts))
    sched = epsilon_schedule(D, 10**6)
    f = rips_filtration(D, len(pts) - 1, sched.P, sched)
    assert f.at_step(sched.P).cells == build_complex([tuple(range(1, len(pts) + 1))]).cells


@given(st.integers(0, 10**6))
def test_skeleton_keeps_low_dimensional_bars(seed):
    rng = np.random.default_rng(seed)
    p = int(rng.integers(3, 8))
    pts = rng.random((p, 2))
    full = rips_pipeline(pts, p - 1, 10**6).filtration
    for m in range(1, min(4, p)):
        cut = rips_pipeline(pts, m, 10**6).filtration
        low = lambda bars: [b for b in bars if b.dim <= m - 1]
        assert barcode_multiset_equal(low(elz_bars(cut)), low(elz_bars(full)))
