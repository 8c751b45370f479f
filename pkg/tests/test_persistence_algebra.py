import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from persistor import exact, oracle
from persistor.errors import TamenessError
from persistor.persistence_algebra import (
    CLOSED,
    INF,
    INFINITE,
    BarcodeInterval,
    PersistenceModule,
    barcode_multiset_equal,
    beta_entry_from_mu,
    beta_from_barcode,
    beta_from_mu,
    conjugate_module,
    decompose_module,
    kernel_numbers,
    module_beta,
    mu_from_beta,
    normalize,
)
from persistor.rips import distance_matrix, elz_bars, rips_filtration


def bar(l, r, dim=0):
    if r == INF:
        return BarcodeInterval(dim, l, INF, right_kind=INFINITE)
    return BarcodeInterval(dim, l, r)


def test_beta_from_barcode():
    assert beta_from_barcode([bar(0, INF)], 0, 5) == 1
    assert beta_from_barcode([bar(0, 2), bar(1, 3)], 1, 2) == 2


def test_beta_from_mu_examples():
    mu = np.zeros((4, 5), dtype=int)
    mu[0, 4] = 1
    beta, beta_inf = beta_from_mu(mu)
    assert (beta[np.triu_indices(4)] == 1).all() and (beta_inf == 1).all()
    mu = np.zeros((4, 5), dtype=int)
    mu[1, 2] = 3
    assert beta_entry_from_mu(mu, 1, 2) == 3 and beta_entry_from_mu(mu, 0, 2) == 0


def test_kernel_numbers():
    beta = np.triu(np.ones((3, 3), dtype=int))
    k_ij, k_i = kernel_numbers(beta)
    assert not k_ij.any() and (k_i == 1).all()
    beta = np.array([[2, 1], [0, 1]])
    k_ij, _ = kernel_numbers(beta)
    assert k_ij[0, 1] == 1


def test_multiset_equality():
    assert barcode_multiset_equal([], [])
    a = [BarcodeInterval(0, 0, 1, CLOSED, "open", mult=2)]
    b = [BarcodeInterval(0, 0, 1, CLOSED, "open")] * 2
    assert barcode_multiset_equal(a, b)


def test_decompose_examples():
    one = PersistenceModule([1, 1, 1], [[[1]], [[1]]])
    assert normalize(decompose_module(one)) == normalize([bar(0, INF)])
    split = PersistenceModule([1, 1], [[[0]]])
    assert normalize(decompose_module(split)) == normalize([bar(0, 0), bar(1, INF)])
    filt = rips_filtration(distance_matrix(np.array([[0.0, 0], [1, 0]])), 1, 1)
    mod = oracle.homology_module(filt, 0)
    assert normalize(decompose_module(mod)) == normalize([bar(0, INF), bar(0, 0)])


def test_tameness_checked():
    with pytest.raises(TamenessError):
        PersistenceModule([1, 1], [[[1]], [[0]]])
    with pytest.raises(TamenessError):
        PersistenceModule([1, 2], [[[1, 0]]])


mu_tables = st.integers(1, 6).flatmap(lambda n: arrays(np.int64, (n, n + 1), elements=st.integers(0, 3)))


@given(mu_tables)
def test_mu_beta_round_trip(mu):
    n = mu.shape[0]
    mu = mu.copy()
    mu[np.tril_indices(n, -1)] = 0
    beta, beta_inf = beta_from_mu(mu)
    assert (mu_from_beta(beta, beta_inf) == mu).all()


@given(st.lists(st.integers(0, 3), min_size=2, max_size=5), st.integers(0, 10**6))
def test_decomposition_is_basis_free(dims, seed):
    rng = np.random.default_rng(seed)
    F = exact.GF2
    maps = [[[int(x) for x in rng.integers(0, 2, dims[n])] for _ in range(dims[n + 1])]
            for n in range(len(dims) - 1)]
    mod = PersistenceModule(dims, maps, F)
    bars = normalize(decompose_module(mod))
    assert bars == normalize(decompose_module(conjugate_module(mod, rng)))
    for i in range(len(dims)):
        for j in range(i, len(dims)):
            assert module_beta(mod, i, j) == sum(
                m for k, m in bars.items() if BarcodeInterval(*k).contains(i, j))


@given(st.lists(st.integers(0, 3), min_size=2, max_size=4), st.integers(0, 10**6))
def test_decomposition_over_rationals(dims, seed):
    rng = np.random.default_rng(seed)
    F = exact.QQ
    maps = [[[F.coerce(int(x)) for x in rng.integers(-1, 2, dims[n])] for _ in range(dims[n + 1])]
            for n in range(len(dims) - 1)]
    mod = PersistenceModule(dims, maps, F)
    bars = normalize(decompose_module(mod))
    for i in range(len(dims)):
        for j in range(i, len(dims)):
            assert module_beta(mod, i, j) == sum(
                m for k, m in bars.items() if BarcodeInterval(*k).contains(i, j))


@given(st.integers(0, 10**6))
def test_corpus_beta_equals_k_identity(seed):
    from persistor.hodge import beta_table

    beta = beta_table(oracle.rips_corpus(1, seed=seed)[0].filtration)
    for b in beta:
        k_ij, k_i = kernel_numbers(b)
        iu = np.triu_indices(b.shape[0])
        assert ((k_i[:, None] - k_ij)[iu] == b[iu]).all()


@given(st.integers(0, 10**6))
def test_module_bars_match_reduction(seed):
    filt = oracle.rips_corpus(1, seed=seed)[0].filtration
    for r in range(filt.max_dim + 1):
        assert barcode_multiset_equal(oracle.module_bars(filt, r), [b for b in elz_bars(filt) if b.dim == r])
