import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncurv import catalog
from ncurv import invariants as inv
from ncurv import linalg as la
from ncurv import scalars as sc
from ncurv.config import RunConfig
from ncurv.cpmap import defect_sequence, dense_defects, subspace_trace
from ncurv.verify import check_entry, eigenvector_agreement

F = Fraction


def brackets_with_slack(entry, est, target, k, p):
    return abs(est.value - target) <= entry.allowed_gap(k, p) and target <= est.upper_bound


@given(st.fractions(0, 1, max_denominator=20).filter(lambda r: r < 1), st.integers(2, 4))
def test_one_dim_curvature_closed_form(r, n):
    assert catalog.one_dim_curvature(n, r) == (n - 1) * (1 - r) / (n - r)


@given(st.fractions(0, 1, max_denominator=10).filter(lambda r: r < 1), st.integers(2, 3))
def test_one_dim_level_values_tend_to_curvature(r, n):
    k = 12 if n == 2 else 8
    e = catalog.get_entry("decaying", u="1", r=[r], n=n)
    est = inv.curvature(e.make(sc.EXACT), k)
    assert est.brackets(catalog.one_dim_curvature(n, r))


@settings(max_examples=20)
@given(st.integers(1, 3), st.integers(2, 3), st.lists(st.fractions(0, 1, max_denominator=6).filter(lambda r: r < 1), min_size=3, max_size=3))
def test_ring_euler_characteristic(d, n, rs):
    # all ring letters decay: the defect is supported on the d ring nodes and
    # the tree nodes above depth k, about d (n - 1) n^(k-2) + ... of them
    u = "".join(str(1 + i % n) for i in range(d))
    k = 8 if n == 2 else 6
    chi = inv.euler(catalog.get_entry("decaying", u=u, r=rs[:d], n=n).make(sc.EXACT), k)
    assert chi.brackets(F(d * (n - 1), n))
    # one decaying letter: the rank is n^(k-1) + ... + n^(k-d)
    one = catalog.get_entry("decaying", u=u, r=rs[:1] + [1] * (d - 1), n=n)
    seq = defect_sequence(one.make(sc.EXACT), k)
    assert seq.ranks[-1] == sum(n ** (k - j) for j in range(1, d + 1))
    assert inv.euler_from(seq).brackets(1 - F(1, n**d))


def bits_value(bits):
    return sum(F(b, 2 ** (i + 1)) for i, b in enumerate(bits))


@settings(max_examples=15)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=4))
def test_binary_expansion_curvature(bits):
    e = catalog.get_entry("binary_expansion", bits="".join(map(str, bits)))
    assert e.expected["curvature"] == bits_value(bits) == catalog.binary_value(bits)
    seq = defect_sequence(e.make(sc.EXACT), 12)
    K = inv.curvature_from(seq)
    assert brackets_with_slack(e, K, bits_value(bits), 12, seq.ranks[0])


@settings(max_examples=15)
@given(st.fractions(0, F(1, 2), max_denominator=12))
def test_curvature_range_hits_every_value(r):
    e = catalog.get_entry("curvature_range", r=r)
    seq = defect_sequence(e.make(sc.EXACT), 14)
    K = inv.curvature_from(seq)
    assert brackets_with_slack(e, K, r, 14, seq.ranks[0])


@pytest.mark.parametrize("n,l", [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_truncation_family_stable_rank(n, l):
    A = catalog.truncation_tuple(n, l, sc.EXACT)
    stable = (n**l - 1) // (n - 1)
    assert A.dim == stable
    defects = dict(dense_defects(A, l + 2))
    for k in (l, l + 1, l + 2):
        assert defects[k] == la.identity(stable, sc.EXACT)
    e = catalog.get_entry("truncation_family", l=l, n=n)
    assert e.expected["stable_rank"] == stable
    if l >= 2:
        assert stable != (n**l - l) // (n - 1)


@pytest.mark.parametrize("n", [2, 3])
def test_symmetric_fock_traces_are_binomial(n):
    depth = 10 if n == 2 else 6
    A = catalog.symmetric_fock_tuple(n, depth)
    seq = defect_sequence(A, depth - 1)
    for k, tr in enumerate(seq.traces, start=1):
        assert float(tr) == pytest.approx(math.comb(k + n - 1, n), abs=1e-8)


def test_shift_and_zero_domain_and_partial_tilde():
    gens = catalog.shift_and_zero_generators(4, sc.EXACT)
    words = catalog.monomial_domain_words(gens, 5)
    assert words == [(), (1,), (1, 1), (1, 1, 1), (1, 1, 1, 1)]
    est = inv.tilde_curvature(2, gens, 12)
    assert est.brackets(F(15, 16))
    assert est.upper_bound - est.value <= F(4, 2**12)


@pytest.mark.parametrize("r", [F(1, 8), F(2, 9), F(1, 4)])
def test_cyclic_range_tilde(r):
    e = catalog.get_entry("cyclic_range", r=r, n=3)
    est = inv.tilde_curvature(3, e.make(sc.FLOAT), 9, backend=sc.FLOAT)
    assert est.brackets(float(r), 1e-12)
    a1, a2 = catalog.cyclic_coefficients(3, r)
    assert float(a1 + a2) == pytest.approx(1.0)


def test_polynomial_tilde_is_one_over_n_to_min_degree():
    for n, w, expected in [(2, "2", F(1, 2)), (3, "11", F(1, 9)), (2, "112", F(1, 8))]:
        e = catalog.get_entry("polynomial_subspace", n=n, coeffs={w: "1"})
        assert e.expected["tilde"] == expected
        gens = e.make(sc.EXACT)
        assert subspace_trace(n, gens, 1, sc.EXACT) == 0


@pytest.mark.parametrize("lam", [0.0, 0.5, 1 / math.sqrt(2)])
def test_eigenvector_compression_matches_atomic(lam):
    assert eigenvector_agreement(lam) <= 1e-10


def test_three_letter_euler_and_float_only():
    e = catalog.get_entry("three_letter", beta=0.8)
    assert e.backends == (sc.FLOAT,)
    with pytest.raises(ValueError):
        e.make(sc.EXACT)
    chi = inv.euler(e.make(sc.FLOAT), 9)
    assert chi.brackets(2 / 3, 1e-9)


@pytest.mark.parametrize("entry", catalog.reference_entries(), ids=lambda e: f"{e.name}-{'-'.join(map(str, e.params.values()))}")
def test_reference_entries_verify(entry):
    cfg = RunConfig(k_max=12, backend=entry.default_backend)
    checks = check_entry(entry, cfg)
    assert checks and all(c.passed for c in checks), [c.to_dict() for c in checks if not c.passed]


def test_describe_is_json_serialisable():
    for name in catalog.entry_names():
        d = catalog.get_entry(name).describe()
        json.dumps(d, default=str)
        assert d["name"].startswith(name.split("_")[0])


def test_lookup_errors():
    with pytest.raises(KeyError):
        catalog.get_entry("nope")
    with pytest.raises(KeyError):
        catalog.get_entry("left_regular", colour=1)
    with pytest.raises(ValueError):
        catalog.get_entry("left_regular", n=1)
    with pytest.raises(ValueError):
        catalog.get_entry("curvature_range", r="3/4")


def test_parameter_coercion():
    assert catalog.get_entry("left_regular", n="3", alpha="2").params == {"n": 3, "alpha": 2}
    assert catalog.get_entry("binary_expansion", bits="101").params["bits"] == [1, 0, 1]
    assert catalog.get_entry("decaying_lambda", lam="1/2").params["r"] == [F(1, 4)]
