import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncurv import scalars as sc
from ncurv.fock import FockVector, inner_product
from ncurv.words import TruncatedBasis, basis_dimension, iter_words_below, strip_prefix, word, word_str

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=12)
gauss = st.builds(sc.GaussQ, fractions, fractions)


@given(gauss, gauss, gauss)
def test_gaussq_field_ops_match_complex(a, b, c):
    assert complex(a + b) == pytest.approx(complex(a) + complex(b))
    assert complex(a * b) == pytest.approx(complex(a) * complex(b))
    assert (a + b) * c == a * c + b * c
    if b:
        assert (a / b) * b == a


@given(gauss)
def test_gaussq_abs2_and_conj(a):
    assert sc.abs2(a) == (a * a.conjugate()).re
    assert sc.abs2(a) >= 0


def test_parse_and_format_scalars():
    assert sc.parse_scalar("3/5", sc.EXACT) == Fraction(3, 5)
    assert sc.parse_scalar(0.5, sc.EXACT) == Fraction(1, 2)
    assert sc.parse_scalar(["1/2", "1/3"], sc.EXACT) == sc.GaussQ(Fraction(1, 2), Fraction(1, 3))
    assert sc.parse_scalar("1/4", sc.FLOAT) == 0.25
    with pytest.raises(ValueError):
        sc.parse_scalar(0.1, sc.EXACT)
    with pytest.raises(ValueError):
        sc.parse_scalar(True, sc.EXACT)
    assert sc.format_scalar(Fraction(7, 3)) == "7/3"
    assert sc.format_scalar(0.25) == 0.25


@given(st.lists(fractions, max_size=8))
def test_format_parse_round_trip(values):
    for v in values:
        assert sc.parse_scalar(sc.format_scalar(v), sc.EXACT) == v


def test_exact_to_float_only():
    assert sc.convert(Fraction(1, 3), sc.FLOAT) == pytest.approx(1 / 3)
    with pytest.raises(sc.BackendError):
        sc.convert(0.3, sc.EXACT)


@given(st.lists(st.floats(-1e6, 1e6), max_size=30), st.randoms())
def test_float_sum_is_order_independent(values, rnd):
    shuffled = list(values)
    rnd.shuffle(shuffled)
    assert sc.exact_sum(values, sc.FLOAT) == sc.exact_sum(shuffled, sc.FLOAT)


def test_words():
    assert word("121") == (1, 2, 1)
    assert word("e") == ()
    assert word("1.10.2") == (1, 10, 2)
    assert word_str((1, 10)) == "1.10"
    assert word_str(()) == "e"
    assert strip_prefix((1, 2, 3), (1, 2)) == (3,)
    assert strip_prefix((1, 2), (2,)) is None


@given(st.integers(2, 4), st.integers(0, 6))
def test_basis_dimension_counts_words(n, k):
    assert basis_dimension(n, k) == len(list(iter_words_below(n, k))) == (n**k - 1) // (n - 1)


def test_basis_dimension_limit():
    with pytest.raises(OverflowError):
        basis_dimension(2, 40, limit=10**6)


@given(st.integers(2, 3), st.integers(1, 4), st.integers(1, 3))
def test_truncated_basis_round_trip(n, depth, alpha):
    b = TruncatedBasis(n, depth, alpha)
    assert len(b) == alpha * basis_dimension(n, depth)
    for i in range(len(b)):
        assert b.index(*b.label(i)) == i


def _vec(n, coeffs):
    return FockVector(n, {(0, w): c for w, c in coeffs.items()}, 1, sc.EXACT)


words2 = st.lists(st.integers(1, 2), max_size=3).map(tuple)
vectors2 = st.dictionaries(words2, fractions, max_size=6).map(lambda d: _vec(2, d))


@given(vectors2, vectors2, st.integers(1, 2))
def test_shift_adjoint_is_adjoint(x, y, i):
    assert inner_product(x.shift(i), y) == inner_product(x, y.shift_adjoint(i))


@given(vectors2)
def test_shift_is_isometric(x):
    for i in (1, 2):
        assert x.shift(i).norm_sq() == x.norm_sq()


def test_row_isometry_identity():
    # sum_i L_i L_i^* = I - P_vacuum
    x = _vec(2, {(): Fraction(1), (1,): Fraction(2), (2, 1): Fraction(3)})
    total = x.shift_adjoint(1).shift(1) + x.shift_adjoint(2).shift(2)
    assert total == x - _vec(2, {(): Fraction(1)})


def test_fock_vector_validation():
    with pytest.raises(ValueError):
        FockVector(2, {(1, ()): 1}, 1, sc.EXACT)
    with pytest.raises(ValueError):
        FockVector(2, {(0, (3,)): 1}, 1, sc.EXACT)
    assert not FockVector(2, {(0, ()): 0}, 1, sc.EXACT)
    assert FockVector.basis(2, (1,), backend=sc.FLOAT).truncate(1).norm_sq() == 0
    assert math.isclose(float(FockVector.basis(2, (1,), backend=sc.FLOAT).norm_sq()), 1.0)
