import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from persistor.complex import build_complex
from persistor.level import canonical_map

settings.register_profile("persistor", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("persistor")

EX45 = [(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 5), (3, 6), (4, 5), (5, 6), (2, 3, 5)]
TETRA_SURFACE = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
HOLLOW_TRIANGLE = [(1, 2), (1, 3), (2, 3)]


@pytest.fixture
def ex45():
    return canonical_map(build_complex(EX45))


@pytest.fixture
def f2():
    return canonical_map(build_complex(TETRA_SURFACE))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@st.composite
def simplex_lists(draw, max_vertex=7, max_size=4, max_len=8):
    """Random simplices as vertex tuples; vertices 1..n all present."""
    n = draw(st.integers(1, max_vertex))
    tops = draw(st.lists(st.sets(st.integers(1, n), min_size=1, max_size=max_size), max_size=max_len))
    return [(v,) for v in range(1, n + 1)] + [tuple(sorted(t)) for t in tops]


@st.composite
def pl_maps(draw, max_vertex=6, max_size=4, max_len=7):
    return canonical_map(build_complex(draw(simplex_lists(max_vertex, max_size, max_len))))


# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
