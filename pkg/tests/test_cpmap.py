import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncurv import catalog
from ncurv import generators as gen
from ncurv import linalg as la
from ncurv import scalars as sc
from ncurv.cpmap import (
    CAP_ENV,
    ResourceLimitError,
    basis_cap,
    compression_trace_by_coefficients,
    defect_rank,
    defect_sequence,
    defect_trace,
    dense_levels,
    phi_apply,
    pure_rank,
    purity_indicator,
    subspace_trace,
)
from ncurv.operators import COMPLEMENT, LeftRegular, make_compression, make_dense, random_contraction, zero_tuple

F = Fraction


def word_sum_defect(A, k):
    """``I - sum_{|w| = k} A_w A_w^*`` by brute force over words."""
    mats = [la.to_numpy(m) for m in A.matrices]
    total = np.zeros_like(mats[0], dtype=complex)
    for w in itertools.product(range(A.n), repeat=k):
        P = np.eye(A.dim, dtype=complex)
        for i in w:
            P = P @ mats[i]
        total += P @ P.conj().T
    return np.eye(A.dim) - total


def test_phi_apply_small_example():
    A = make_dense([[[0, 1], [0, 0]], [[F(1, 2), 0], [0, 0]]], sc.EXACT)
    X = phi_apply(A, la.identity(2, sc.EXACT))
    assert la.to_numpy(X).real.tolist() == [[1.25, 0], [0, 0]]
    with pytest.raises(ValueError):
        phi_apply(A, la.identity(3, sc.EXACT))


def test_left_regular_counts():
    L = LeftRegular(2, 1, sc.EXACT)
    assert defect_trace(L, 3) == 7 and defect_rank(L, 3) == 7
    assert defect_sequence(LeftRegular(3, 2, sc.EXACT), 3).traces == [2, 8, 26]


def test_zero_tuple_defects_are_identity():
    seq = defect_sequence(zero_tuple(2, 3, sc.EXACT), 3)
    assert seq.traces == [3, 3, 3] and seq.ranks == [3, 3, 3]


def test_decaying_one_dimensional_level_two():
    # D_2 diagonal: ring 1 - r^2, first layer (1 - r) and 1
    A = catalog.get_entry("decaying", u="1", r=[F(1, 2)], n=2).make(sc.EXACT)
    assert defect_trace(A, 2) == F(5, 4)
    assert catalog.one_dim_trace(2, F(1, 2), 2) == F(5, 4)


def test_short_form_disagrees_at_finite_level():
    assert catalog.one_dim_trace_short_form(2, F(1, 2), 2) == F(9, 8)
    assert catalog.one_dim_trace_short_form(2, F(1, 2), 2) != catalog.one_dim_trace(2, F(1, 2), 2)


@given(st.fractions(0, 1, max_denominator=12), st.integers(2, 4), st.integers(1, 8))
def test_one_dim_closed_form_matches_series_and_operator(r, n, k):
    assert catalog.one_dim_trace(n, r, k) == catalog.one_dim_trace_series(n, r, k)
    A = catalog.get_entry("decaying", u="1", r=[r], n=n).make(sc.EXACT)
    assert defect_trace(A, k) == catalog.one_dim_trace(n, r, k)


def test_catalog_level_values():
    def levels(name, k, **kw):
        s = defect_sequence(catalog.get_entry(name, **kw).make(sc.EXACT), k)
        return s.traces[-1], s.ranks[-1]

    assert levels("xi_e_perp", 3) == (14, 14)
    assert levels("truncation_family", 4) == (3, 3)
    assert levels("binary_expansion", 4, bits="1") == (8, 8)
    assert levels("truncation_family", 5, l=3, n=2) == (7, 7)


def test_pure_rank_examples():
    assert pure_rank(LeftRegular(3, 2, sc.EXACT)) == 2
    assert pure_rank(catalog.get_entry("eigenvector", lam="3/5").make(sc.EXACT)) == 1
    assert pure_rank(zero_tuple(2, 4, sc.EXACT)) == 4


def test_purity_indicator_examples():
    assert purity_indicator(LeftRegular(2, 1, sc.EXACT), 3) == 0
    A = catalog.get_entry("decaying", u="1", r=[F(1, 4)], n=2).make(sc.EXACT)
    assert purity_indicator(A, 3) == F(1, 64)
    U = make_dense([[[F(3, 5)]], [[F(4, 5)]]], sc.EXACT)
    assert purity_indicator(U, 5) == 1
    # the probe P_M xi_2 starts one level down, so the maximum is r^(k-1)
    E = catalog.get_entry("eigenvector", lam="3/5").make(sc.EXACT)
    assert [purity_indicator(E, k) for k in (1, 2, 3)] == [1, F(9, 25), F(81, 625)]


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(1, 4), st.sampled_from(sc.BACKENDS))
def test_dense_defects_match_word_sum(seed, n, dim, backend):
    A = random_contraction(n, dim, np.random.default_rng(seed), backend)
    seq = defect_sequence(A, 4)
    for k in range(1, 5):
        D = word_sum_defect(A, k)
        assert float(np.real(np.trace(D))) == pytest.approx(float(np.real(complex(seq.traces[k - 1]))), abs=1e-9)


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(1, 5))
def test_level_identities_on_random_tuples(seed, n, dim):
    # D_{k+1} = D_1 + Phi(D_k): trace increments are Phi-images, ranks subadditive
    A = random_contraction(n, dim, np.random.default_rng(seed), sc.EXACT)
    seq = defect_sequence(A, 5)
    p = seq.ranks[0]
    for k in range(1, 5):
        assert seq.traces[k] >= seq.traces[k - 1]
        assert seq.ranks[k] <= p + n * seq.ranks[k - 1]
        assert 0 <= seq.traces[k - 1] <= seq.ranks[k - 1] <= dim


def homogeneous_pair(seed, m, count):
    """``count`` orthonormal vectors supported on words of length ``m``.

    Equal-length vectors are wandering: the orbit vectors ``L_v zeta`` with
    ``v`` non-empty live on longer words.
    """
    rng = np.random.default_rng(seed)
    words = list(itertools.product((1, 2), repeat=m))
    Q, _ = np.linalg.qr(rng.normal(size=(len(words), count)))
    return [gen.finite(2, {w: float(Q[i, j]) for i, w in enumerate(words) if abs(Q[i, j]) > 1e-12}) for j in range(count)]


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 2))
def test_compression_paths_agree(seed, m, count):
    A = make_compression(2, 1, homogeneous_pair(seed, m, count), COMPLEMENT, sc.FLOAT)
    fast = defect_sequence(A, 4)
    slow = dense_levels(A, 4, depth=6)
    assert fast.ranks == [rk for _, rk in slow]
    for k in range(1, 5):
        assert fast.traces[k - 1] == pytest.approx(slow[k - 1][0], abs=1e-8)
        assert compression_trace_by_coefficients(A, k) == pytest.approx(fast.traces[k - 1], abs=1e-8)


@given(st.lists(st.sampled_from([(1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]), min_size=2, max_size=2, unique=True))
def test_exact_pythagorean_generator_paths_agree(ws):
    if len(ws[0]) != len(ws[1]):
        return
    g = gen.finite(2, {ws[0]: F(3, 5), ws[1]: F(4, 5)}, backend=sc.EXACT)
    A = make_compression(2, 1, [g], COMPLEMENT, sc.EXACT)
    fast = defect_sequence(A, 4)
    assert [(r.trace, r.rank) for r in fast.records] == dense_levels(A, 4, depth=6)


def test_generator_order_does_not_matter():
    gens = catalog.binary_generators([1, 0, 1], sc.EXACT)
    a = make_compression(2, 1, gens, COMPLEMENT, sc.EXACT)
    b = make_compression(2, 1, list(reversed(gens)), COMPLEMENT, sc.EXACT)
    assert defect_sequence(a, 6).records == defect_sequence(b, 6).records


def test_subspace_trace_of_single_monomial():
    # span of L_v xi_2 meets ran Q_k in the words of length < k ending in 2
    g = gen.monomial(2, (2,), backend=sc.EXACT)
    assert [subspace_trace(2, [g], k, sc.EXACT) for k in range(1, 5)] == [0, 1, 3, 7]


def test_cap_and_environment(monkeypatch):
    A = random_contraction(2, 6, np.random.default_rng(1), sc.FLOAT)
    with pytest.raises(ResourceLimitError):
        defect_sequence(A, 2, cap=5)
    monkeypatch.setenv(CAP_ENV, "5")
    assert basis_cap() == 5 and basis_cap(10) == 10
    with pytest.raises(ResourceLimitError):
        defect_sequence(A, 2)
    # closed-form paths do not materialise a basis
    assert defect_sequence(LeftRegular(2, 1, sc.EXACT), 20).traces[-1] == 2**20 - 1
    E = catalog.get_entry("xi_e_perp").make(sc.EXACT)
    with pytest.raises(ResourceLimitError):
        defect_sequence(E, 4)


def test_level_arguments_checked():
    with pytest.raises(ValueError):
        defect_trace(LeftRegular(2), 0)
    with pytest.raises(ValueError):
        defect_sequence(LeftRegular(2), 0)
