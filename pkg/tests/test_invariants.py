import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncurv import catalog
from ncurv import generators as gen
from ncurv import invariants as inv
from ncurv import scalars as sc
from ncurv.cpmap import defect_sequence
from ncurv.operators import (
    COMPLEMENT,
    SPAN,
    LeftRegular,
    direct_sum,
    make_compression,
    make_dense,
    random_contraction,
    random_unitary,
    unitary_mix,
    validate_row_contraction,
    zero_tuple,
)

F = Fraction


def test_estimate_from_left_regular_traces():
    est = inv.estimate([1, 3, 7], 2, sc.EXACT, 1)
    assert est.levels == (F(1, 2), F(3, 4), F(7, 8))
    assert est.value == F(7, 8) and est.upper_bound == 1
    assert est.cauchy_gap == F(1, 8) and not est.converged
    assert est.brackets(1) and not est.brackets(F(1, 2))
    with pytest.raises(ValueError):
        inv.estimate([], 2, sc.EXACT, 1)


def test_estimate_converges_on_constant_tail():
    est = inv.estimate([1, 1, 1], 2, sc.FLOAT, None)
    assert est.upper_bound == math.inf
    assert inv.estimate([2.0, 6.0, 14.0, 30.0], 2, sc.FLOAT, 2, gap=0.2).converged


def test_aitken_recovers_geometric_limit():
    vals = [1 - 0.5**k for k in range(1, 6)]
    assert inv.aitken(vals) == pytest.approx(1.0)
    assert inv.aitken([1, 2]) is None
    assert inv.aitken([1, 2, 3]) is None


def test_curvature_and_euler_of_decaying_atomic():
    A = catalog.get_entry("decaying", u="1", r=["1/4"], n=2).make(sc.EXACT)
    K, chi = inv.curvature(A, 14), inv.euler(A, 14)
    assert K.brackets(F(3, 7)) and chi.brackets(F(1, 2))
    assert chi.value == F(1, 2)


def test_freeness_verdicts():
    assert inv.freeness_test(LeftRegular(2, 2, sc.EXACT), 8).verdict == inv.FREE_CONSISTENT
    A = catalog.get_entry("decaying", u="1", r=["1/4"], n=2).make(sc.EXACT)
    assert inv.freeness_test(A, 10).verdict == inv.NOT_FREE
    cuntz = make_dense([[[F(3, 5)]], [[F(4, 5)]]], sc.EXACT)
    v = inv.freeness_test(cuntz, 6)
    assert v.verdict == inv.INCONCLUSIVE and v.non_pure
    assert inv.freeness_test(zero_tuple(2, 0, sc.EXACT), 4).reason == "pure rank is zero"
    assert inv.freeness_test(zero_tuple(2, 2, sc.EXACT), 8).verdict == inv.NOT_FREE


def test_report_hierarchy_flags():
    rep = inv.hierarchy_report(catalog.get_entry("xi_e_perp").make(sc.EXACT), 8)
    assert rep.hierarchy_ok and rep.levelwise_ok and rep.pure_rank == 2


def homogeneous(seed, n, m, count):
    rng = np.random.default_rng(seed)
    words = list(itertools.product(range(1, n + 1), repeat=m))
    Q, _ = np.linalg.qr(rng.normal(size=(len(words), count)))
    return [gen.finite(n, {w: float(Q[i, j]) for i, w in enumerate(words)}) for j in range(count)]


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(0, 2), st.integers(1, 2))
def test_tilde_of_homogeneous_generators(seed, n, m, count):
    # a unit vector on words of length m contributes N_{k-m} to t_k
    gens = homogeneous(seed, n, m, min(count, n**m))
    k = 7 if n == 2 else 5
    est = inv.tilde_curvature(n, gens, k, backend=sc.FLOAT)
    limit = len(gens) / n**m
    assert est.value > 0
    assert est.lower_bound <= limit + 1e-12 <= est.upper_bound + 2e-12
    assert list(est.levels) == sorted(est.levels)


def test_tilde_exact_examples():
    est = inv.tilde_curvature(2, [gen.monomial(2, (2,), backend=sc.EXACT)], 10)
    assert est.value == F(1, 2) - F(1, 2**10) and est.upper_bound == F(1, 2)
    e = catalog.get_entry("polynomial_subspace", n=3, coeffs={"11": "1"})
    est = inv.tilde_curvature(3, e.make(sc.EXACT), 8)
    assert est.brackets(e.expected["tilde"]) and e.expected["tilde"] == F(1, 9)
    assert inv.tilde_curvature(2, [gen.monomial(2, (), backend=sc.EXACT)], 6).upper_bound == 1


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(1, 3), st.integers(1, 3))
def test_direct_sum_is_additive(seed, n, d1, d2):
    rng = np.random.default_rng(seed)
    A, B = random_contraction(n, d1, rng, sc.EXACT), random_contraction(n, d2, rng, sc.EXACT)
    s = defect_sequence(direct_sum(A, B), 4)
    a, b = defect_sequence(A, 4), defect_sequence(B, 4)
    assert s.traces == [x + y for x, y in zip(a.traces, b.traces)]
    assert s.ranks == [x + y for x, y in zip(a.ranks, b.ranks)]


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(1, 3))
def test_unitary_mix_is_invariant(seed, n, d):
    rng = np.random.default_rng(seed)
    A = random_contraction(n, d, rng, sc.EXACT)
    U = random_unitary(n, rng, sc.EXACT)
    assert defect_sequence(unitary_mix(A, U), 4).records == defect_sequence(A, 4).records


suffix_free_sets = [
    [(2,)],
    [(1,), (2,)],
    [(2,), (2, 1)],
    [(1, 2), (2, 2)],
    [(2, 1, 1), (2,)],
    [(2, 1), (1, 1), (2, 2)],
]


def allowed_words_below(words, k):
    """Words of length < k with no suffix in ``words`` (brute force)."""
    count = 0
    for length in range(k):
        for v in itertools.product((1, 2), repeat=length):
            if not any(len(w) <= length and v[length - len(w):] == w for w in words):
                count += 1
    return count


@pytest.mark.parametrize("words", suffix_free_sets)
def test_monomial_span_is_free_and_complement_is_not(words):
    gens = [gen.monomial(2, w, backend=sc.EXACT) for w in words]
    span = make_compression(2, 1, gens, SPAN, sc.EXACT)
    v = inv.freeness_test(span, 6)
    assert v.verdict == inv.FREE_CONSISTENT and v.pure_rank == len(words)
    # compressing to a co-invariant subspace M gives D_k = P_M Q_k P_M
    comp = make_compression(2, 1, gens, COMPLEMENT, sc.EXACT)
    seq = defect_sequence(comp, 10)
    assert seq.traces == [allowed_words_below(words, k) for k in range(1, 11)]
    K = inv.curvature_from(seq)
    limit = 1 - sum(F(1, 2 ** len(w)) for w in words)
    # counting words level by level gives the finite-level error exactly
    excess = sum(1 - F(1, 2 ** len(w)) for w in words)
    assert K.value - limit == (excess - limit) / 2**10
    assert K.upper_bound >= limit
    if K.upper_bound < seq.ranks[0]:
        assert inv.freeness_test(comp, 10).verdict == inv.NOT_FREE


def upper_triangular(seed, n, d, m):
    """Halve a random tuple and zero its lower-left block; ``C^d`` is invariant."""
    B = random_contraction(n, d + m, np.random.default_rng(seed), sc.EXACT)
    mats = []
    for M in B.matrices:
        rows = [[x / 2 for x in row] for row in M.to_dense()]
        for i in range(d, d + m):
            rows[i][:d] = [0] * d
        mats.append(rows)
    return make_dense(mats, sc.EXACT)


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(1, 3), st.integers(1, 2))
def test_restriction_to_invariant_subspace_of_finite_codimension(seed, n, d, m):
    # D_k(A) >= P D_k(B) P for A = B restricted to an invariant subspace
    B = upper_triangular(seed, n, d, m)
    assert validate_row_contraction(B).ok
    A = make_dense([[row[:d] for row in M.to_dense()[:d]] for M in B.matrices], sc.EXACT)
    a, b = defect_sequence(A, 4), defect_sequence(B, 4)
    for k in range(4):
        assert a.traces[k] >= b.traces[k] - m
        assert a.ranks[k] >= b.ranks[k] - 2 * m
