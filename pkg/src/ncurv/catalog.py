"""Executable examples with closed-form invariants.

Each ``entry_*`` function returns a :class:`CatalogEntry`: a builder for the
representation (or the generators of an invariant subspace), the expected
limits, optional exact finite-level formulas, and the formula text each
expected value comes from.

Conventions: right creation ``R_w`` applied to the vacuum gives ``xi_w``, so
the subspace ``R H_n`` for ``R = sum a_w R_w`` is the invariant subspace
generated by ``sum a_w xi_w``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import generators as gen
from . import scalars as sc
from .cpmap import words_below
from .operators import (
    COMPLEMENT,
    SPAN,
    DenseTuple,
    LeftRegular,
    make_compression,
    make_decaying_atomic,
    make_dense,
    zero_tuple,
)
from .words import EMPTY, Word, iter_words_below, word, word_str

TUPLE = "tuple"
SUBSPACE = "subspace"


@dataclass(frozen=True)
class CatalogEntry:
    """One example.

    ``build(backend)`` returns a row contraction (``kind == "tuple"``) or a
    list of generators of an invariant subspace (``kind == "subspace"``).
    ``level`` maps ``"trace"``/``"rank"``/``"tilde_trace"`` to exact
    functions of ``k`` where a finite-level formula is known (``min_level``
    is the first level it applies to). ``slack(k)`` bounds
    ``|level-k value - limit|`` for the curvature and Euler values; when it is
    ``None`` the bound is ``pure_rank / n^k``.
    """

    name: str
    params: dict
    build: Callable
    expected: dict
    formulas: dict
    n: int
    kind: str = TUPLE
    level: dict = field(default_factory=dict)
    min_level: int = 1
    backends: tuple = (sc.EXACT, sc.FLOAT)
    notes: str = ""
    slack: Callable | None = None

    def allowed_gap(self, k: int, pure_rank: int):
        if self.slack is not None:
            return Fraction(self.slack(k))
        return Fraction(pure_rank, self.n**k)

    @property
    def default_backend(self) -> str:
        return self.backends[0]

    def make(self, backend: str | None = None):
        backend = backend or self.default_backend
        if backend not in self.backends:
            raise ValueError(f"entry {self.name} supports backends {self.backends}, not {backend}")
        return self.build(backend)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "n": self.n,
            "params": {k: _show(v) for k, v in self.params.items()},
            "expected": {k: _show(v) for k, v in self.expected.items()},
            "formulas": dict(self.formulas),
            "backends": list(self.backends),
            "finite_level_formulas": sorted(self.level),
            "notes": self.notes,
        }


def _show(v):
    if isinstance(v, (Fraction, int)) and not isinstance(v, bool):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_show(x) for x in v]
    return v


def _frac(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


# ------------------------------------------------------------ left regular


def entry_left_regular(n: int = 2, alpha: int = 1) -> CatalogEntry:
    """``alpha`` copies of the left creation tuple ``L``; ``K = chi = alpha``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")

    def build(backend):
        if alpha == 0:
            return zero_tuple(n, 0, backend)
        return LeftRegular(n, alpha, backend)

    count = lambda k: alpha * words_below(n, k)
    return CatalogEntry(
        "left_regular",
        {"n": n, "alpha": alpha},
        build,
        {"curvature": Fraction(alpha), "euler": Fraction(alpha), "pure_rank": alpha},
        {"trace_k": "alpha (n^k - 1)/(n - 1)", "rank_k": "alpha (n^k - 1)/(n - 1)", "curvature": "alpha", "euler": "alpha"},
        n,
        level={"trace": count, "rank": count},
    )


# ---------------------------------------------------------- decaying atomic


def one_dim_trace(n: int, r, k: int):
    """Defect trace of the one-dimensional decaying atomic tuple at level ``k``.

    Sum over the ring-tree basis: ``1 - r^k + (n-1) sum_{j=0}^{k-2} n^j (1 - r^{k-1-j})``,
    which sums to ``n^{k-1} - r^k - (n-1) r (n^{k-1} - r^{k-1})/(n - r)``.
    """
    r = Fraction(r)
    return n ** (k - 1) - r**k - Fraction((n - 1)) * r * (n ** (k - 1) - r ** (k - 1)) / (n - r)


def one_dim_trace_series(n: int, r, k: int):
    r = Fraction(r)
    return 1 - r**k + (n - 1) * sum(n**j * (1 - r ** (k - 1 - j)) for j in range(k - 1))


def one_dim_trace_short_form(n: int, r, k: int):
    """The shorter closed form ``n^{k-1} - r^k - ((n-1) r/(n(n-r)))(n^k - r^k)``.

    It agrees with :func:`one_dim_trace` at ``r = 0`` and in the normalised
    limit, but not at finite ``k`` for ``0 < r < 1``; kept for comparison.
    """
    r = Fraction(r)
    return n ** (k - 1) - r**k - Fraction(n - 1) * r / (n * (n - r)) * (n**k - r**k)


def one_dim_curvature(n: int, r):
    r = Fraction(r) if not isinstance(r, float) else r
    return (n - 1) * (1 - r) / (n - r)


def entry_decaying(u="1", lam=None, n: int | None = None, r=None) -> CatalogEntry:
    """Decaying atomic tuple from ring word ``u`` and ``lam`` (or ``r = |lam|^2``).

    Exact builds use ``r``; irrational ``lam`` such as ``1/sqrt(2)`` should be
    given as ``r`` (``r = 1/2``) to stay exact. With neither given every
    ring letter decays with ``r = 1/2``.
    """
    u = word(u) if isinstance(u, str) else tuple(u)
    d = len(u)
    if n is None:
        n = max(2, max(u))
    if r is None:
        r = [sc.abs2(x) for x in lam] if lam is not None else [Fraction(1, 2)] * d
    r = [_frac(x) if not isinstance(x, Fraction) else x for x in r]
    if len(r) != d:
        raise ValueError("one decay value per ring letter")
    if any(x < 0 or x > 1 for x in r):
        raise ValueError("|lambda|^2 must lie in [0, 1]")
    p = sum(1 for x in r if x < 1)
    expected = {"pure_rank": p}
    formulas = {"pure_rank": "#{s : |lambda_s| < 1}"}
    level = {}
    min_level = 1
    if p == 1:
        expected["euler"] = 1 - Fraction(1, n**d)
        formulas["euler"] = "1 - 1/n^d"
        level["rank"] = lambda k: sum(n ** (k - j) for j in range(1, d + 1))
        formulas["rank_k"] = "n^{k-1} + ... + n^{k-d}  (k >= d)"
        min_level = d
    if d == 1:
        expected["curvature"] = one_dim_curvature(n, r[0])
        formulas["curvature"] = "(n-1)(1-r)/(n-r)"
        level["trace"] = lambda k: one_dim_trace(n, r[0], k)
        formulas["trace_k"] = "n^{k-1} - r^k - (n-1) r (n^{k-1} - r^{k-1})/(n-r)"
        formulas["trace_k_short_form"] = "n^{k-1} - r^k - ((n-1) r/(n(n-r)))(n^k - r^k)  (exact only at r = 0 or r = 1)"
        if r[0] == 1:
            expected["euler"] = Fraction(0)
    if p == 0:
        expected["curvature"] = Fraction(0)
        expected["euler"] = Fraction(0)

    def build(backend):
        if backend == sc.EXACT:
            lam_exact = None if lam is None else lam
            if lam_exact is not None and all(sc.is_exact(x) for x in lam_exact):
                return make_decaying_atomic(u, lam=lam_exact, n=n, backend=backend)
            return make_decaying_atomic(u, n=n, backend=backend, r=r)
        if lam is not None:
            return make_decaying_atomic(u, lam=[sc.to_float(x) for x in lam], n=n, backend=backend)
        return make_decaying_atomic(u, n=n, backend=backend, r=[float(x) for x in r])

    return CatalogEntry(
        "decaying",
        {"u": word_str(u), "r": r, "n": n},
        build,
        expected,
        formulas,
        n,
        level=level,
        min_level=min_level,
    )


def entry_curvature_range(r=Fraction(1, 3)) -> CatalogEntry:
    """One-dimensional decaying 2-tuple with ``|lam|^2 = s = (1 - 2r)/(1 - r)``; ``K = r``."""
    r = _frac(r)
    if not 0 <= r <= Fraction(1, 2):
        raise ValueError("r must lie in [0, 1/2]")
    s = (1 - 2 * r) / (1 - r)
    e = entry_decaying((1,), n=2, r=[s])
    expected = dict(e.expected)
    expected["curvature"] = r
    formulas = dict(e.formulas)
    formulas["s"] = "s = (1 - 2r)/(1 - r)"
    formulas["curvature"] = "r"
    return CatalogEntry(
        "curvature_range", {"r": r, "s": s}, e.build, expected, formulas, 2, level=e.level, min_level=e.min_level
    )


def entry_decaying_lambda(lam=Fraction(1, 2), n: int = 2, d: int = 1) -> CatalogEntry:
    """Decaying atomic with decay vector ``(lam, 1, ..., 1)`` on the ring word ``1 2 1 2 ...`` of length ``d``."""
    lam = _frac(lam)
    if not 0 <= lam <= 1:
        raise ValueError("lam must lie in [0, 1]")
    u = tuple((s % 2) + 1 for s in range(d))
    e = entry_decaying(u, n=n, r=[lam * lam] + [Fraction(1)] * (d - 1))
    params = dict(e.params)
    params.update({"lam": lam, "d": d})
    return CatalogEntry("decaying_lambda", params, e.build, e.expected, e.formulas, n, level=e.level, min_level=e.min_level)


def decay_sweep(n: int = 2, d: int = 1, lams: Sequence = (0, 0.25, 0.5, 0.75, 1)) -> list[CatalogEntry]:
    """Decaying atomics with decay vector ``(lam, 1, ..., 1)`` over a grid of ``lam``."""
    return [entry_decaying_lambda(lam, n, d) for lam in lams]


# ------------------------------------------------------- subspace examples


def binary_generators(bits: Sequence[int], backend: str = sc.EXACT) -> list:
    """Generators of the invariant complement of the binary-expansion domain.

    With ``K`` the last index where ``bits[K] == 1`` the domain is the closed
    span of ``R_1^k R_2 H_2 (+) span{xi_{1^j} : j <= k}`` over selected ``k``;
    its complement is generated by ``xi_{2 1^k}`` for unselected ``k < K``
    and by ``xi_{1^{K+1}}``. No selected bit means the domain is ``{0}`` and
    the complement is generated by ``xi_e``.
    """
    bits = [int(b) for b in bits]
    if any(b not in (0, 1) for b in bits):
        raise ValueError("bits must be 0/1")
    ones = [k for k, b in enumerate(bits) if b]
    if not ones:
        return [gen.monomial(2, EMPTY, backend=backend)]
    K = ones[-1]
    gens = [gen.monomial(2, (2,) + (1,) * k, backend=backend) for k in range(K) if not bits[k]]
    gens.append(gen.monomial(2, (1,) * (K + 1), backend=backend))
    return gens


def binary_value(bits: Sequence[int]) -> Fraction:
    return sum((Fraction(1, 2 ** (k + 1)) for k, b in enumerate(bits) if b), Fraction(0))


def entry_binary_expansion(bits: Sequence[int] = (1,)) -> CatalogEntry:
    """Monomial-complement compression with ``K = chi = sum_k bits[k] 2^{-k-1}``."""
    bits = tuple(int(b) for b in bits)
    r = binary_value(bits)
    m = len(binary_generators(bits))

    def build(backend):
        return make_compression(2, 1, binary_generators(bits, backend), COMPLEMENT, backend)

    level = {}
    formulas = {"curvature": "r = sum eps_k 2^{-k-1}", "euler": "r = sum eps_k 2^{-k-1}"}
    if bits and bits[0] == 1 and not any(bits[1:]):
        level = {"trace": lambda k: 2 ** (k - 1), "rank": lambda k: 2 ** (k - 1)}
        formulas["trace_k"] = formulas["rank_k"] = "2^{k-1}"
    return CatalogEntry(
        "binary_expansion",
        {"bits": list(bits), "r": r},
        build,
        {"curvature": r, "euler": r, "pure_rank": 1 if r else 0},
        formulas,
        2,
        level=level,
        # monomial complement: level value - K = (sum_w (1 - 2^-|w|) - K) / 2^k
        slack=lambda k: Fraction(max(1, m), 2**k),
    )


def _coeff_words(coeffs: dict) -> dict:
    return {word(w) if isinstance(w, str) else tuple(w): c for w, c in coeffs.items()}


def _parse_coeffs(coeffs: dict, backend: str) -> dict:
    out = {}
    for w, c in _coeff_words(coeffs).items():
        out[w] = sc.parse_scalar(c, backend) if isinstance(c, (str, list, float)) else sc.convert(c, backend)
    return out


def _coeffs_exact(n: int, coeffs: dict) -> bool:
    """True when the coefficients parse exactly and are exactly unit."""
    try:
        polynomial_generator(n, coeffs, sc.EXACT)
    except (ValueError, sc.BackendError):
        return False
    return True


def polynomial_generator(n: int, coeffs: dict, backend: str = sc.EXACT) -> gen.Generator:
    """The vector ``R xi_e = sum a_w xi_w``; all words must share one length."""
    words = _parse_coeffs(coeffs, backend)
    if not words:
        raise ValueError("need at least one coefficient")
    if len({len(w) for w in words}) != 1:
        raise ValueError("polynomial isometry needs words of one length")
    total = sum(sc.abs2(c) for c in words.values())
    if (backend == sc.EXACT and total != 1) or (backend == sc.FLOAT and abs(float(total) - 1) > 1e-12):
        raise ValueError(f"coefficients must have sum |a_w|^2 = 1, got {total}")
    return gen.finite(n, words, backend=backend, label="R xi_e")


def entry_polynomial_isometry(n: int = 2, coeffs: dict | None = None) -> CatalogEntry:
    """Compression to the complement of ``R H_n``, ``R = sum_{|w| = k0} a_w R_w``."""
    coeffs = coeffs or {"2": 1}
    exact_ok = _coeffs_exact(n, coeffs)
    g = polynomial_generator(n, coeffs, sc.EXACT if exact_ok else sc.FLOAT)
    k0 = g.min_degree()

    def build(backend):
        return make_compression(n, 1, [polynomial_generator(n, coeffs, backend)], COMPLEMENT, backend)

    chi = 1 - Fraction(1, n**k0)
    rank = lambda k: words_below(n, k) - words_below(n, k - k0)
    return CatalogEntry(
        "polynomial_isometry",
        {"n": n, "k0": k0, "coeffs": {word_str(w): _show(c) for w, c in _coeff_words(coeffs).items()}},
        build,
        {"curvature": chi, "euler": chi, "pure_rank": 1, "tilde": Fraction(1, n**k0)},
        {
            "euler": "1 - 1/n^k0",
            "curvature": "1 - 1/n^k0",
            "tilde": "1/n^k0 (so that K + tilde = 1)",
            "rank_k": "(n^k - 1)/(n - 1) - (n^{k-k0} - 1)/(n - 1)",
        },
        n,
        level={"rank": rank, "trace": rank},
        min_level=k0,
        backends=(sc.EXACT, sc.FLOAT) if exact_ok else (sc.FLOAT,),
    )


def subspace_entry_polynomial(n: int = 2, coeffs: dict | None = None) -> CatalogEntry:
    """``R H_n`` itself as a subspace entry (for the invariant-subspace trace)."""
    coeffs = coeffs or {"2": 1}
    e = entry_polynomial_isometry(n, coeffs)
    k0 = e.params["k0"]
    return CatalogEntry(
        "polynomial_subspace",
        e.params,
        lambda backend: [polynomial_generator(n, coeffs, backend)],
        {"tilde": Fraction(1, n**k0)},
        {"tilde": "1/n^k0", "tilde_trace_k": "(n^{k-k0} - 1)/(n - 1)"},
        n,
        kind=SUBSPACE,
        level={"tilde_trace": lambda k: words_below(n, k - k0)},
        backends=e.backends,
    )


def cyclic_coefficients(n: int, r):
    """``(a1^2, a2^2)`` with ``a2^2 = (n/(n-1))(1 - n r)`` and ``a1^2 = 1 - a2^2``."""
    r = _frac(r)
    lo, hi = Fraction(1, n * n), Fraction(1, (n - 1) ** 2)
    if not lo < r <= hi:
        raise ValueError(f"r must lie in (1/{n * n}, 1/{(n - 1) ** 2}] for n={n}")
    a2sq = Fraction(n, n - 1) * (1 - n * r)
    if not 0 <= a2sq <= 1:
        raise ValueError(f"r={r} gives a2^2={a2sq} outside [0, 1]")
    return 1 - a2sq, a2sq


def cyclic_generator(n: int, r, backend: str = sc.FLOAT) -> gen.Generator:
    a1sq, a2sq = cyclic_coefficients(n, r)
    a1, a2 = _root(a1sq, backend), _root(a2sq, backend)
    return gen.finite(n, {(1,): a1, (2, 2): a2}, backend=backend, label="a1 xi_1 + a2 xi_22")


def _root(x: Fraction, backend: str):
    if backend == sc.FLOAT:
        return math.sqrt(x)
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a != x.numerator or b * b != x.denominator:
        raise ValueError(f"{x} has no rational square root; use the float backend")
    return Fraction(a, b)


def entry_cyclic_range(r=Fraction(1, 4), n: int = 3) -> CatalogEntry:
    """Subspace ``(a1 R_1 + a2 R_2^2) H_n`` with invariant-subspace curvature ``r``."""
    r = _frac(r)
    a1sq, a2sq = cyclic_coefficients(n, r)
    exact_ok = all(math.isqrt(x.numerator) ** 2 == x.numerator and math.isqrt(x.denominator) ** 2 == x.denominator for x in (a1sq, a2sq))

    def build(backend):
        return [cyclic_generator(n, r, backend)]

    return CatalogEntry(
        "cyclic_range",
        {"n": n, "r": r, "a1_sq": a1sq, "a2_sq": a2sq},
        build,
        {"tilde": r, "complement_curvature": 1 - r},
        {"tilde": "a1^2/n + a2^2/n^2 = r", "a2_sq": "(n/(n-1))(1 - n r)", "tilde_k": "r - 1/n^k"},
        n,
        kind=SUBSPACE,
        level={"tilde_trace": lambda k: a1sq * words_below(n, k - 1) + a2sq * words_below(n, k - 2)},
        backends=(sc.EXACT, sc.FLOAT) if exact_ok else (sc.FLOAT,),
    )


def entry_xi_e_perp(n: int = 2) -> CatalogEntry:
    """Restriction of ``L`` to the invariant subspace ``span{xi_w : |w| >= 1}``."""

    def build(backend):
        gens = [gen.monomial(n, (i,), backend=backend) for i in range(1, n + 1)]
        return make_compression(n, 1, gens, SPAN, backend)

    count = lambda k: n * words_below(n, k)
    return CatalogEntry(
        "xi_e_perp",
        {"n": n},
        build,
        {"curvature": Fraction(n), "euler": Fraction(n), "pure_rank": n, "freeness": "free-consistent"},
        {"curvature": "n", "euler": "n", "trace_k": "n + n^2 + ... + n^k"},
        n,
        level={"trace": count, "rank": count},
    )


def shift_and_zero_generators(m: int, backend: str = sc.EXACT) -> list:
    return [gen.monomial(2, (2,) + (1,) * k, backend=backend) for k in range(m)]


def entry_shift_and_zero(m: int = 4) -> CatalogEntry:
    """Complement of ``(+)_{k < m} R_1^k R_2 H_2``: the first ``m`` summands of a family whose complement is ``span{xi_{1^k}}``.

    The infinite family has invariant-subspace curvature 1 and leaves
    ``A_1`` a unilateral shift, ``A_2 = 0``; with ``m`` generators the
    partial value is ``1 - 2^{-m}`` and the discrepancy ``2^{-m}`` is
    recorded.
    """
    if m < 1:
        raise ValueError("m must be >= 1")

    def build(backend):
        return make_compression(2, 1, shift_and_zero_generators(m, backend), COMPLEMENT, backend)

    partial = 1 - Fraction(1, 2**m)
    return CatalogEntry(
        "shift_and_zero",
        {"m": m},
        build,
        {"tilde_partial": partial, "tilde": Fraction(1), "discrepancy": Fraction(1, 2**m), "curvature": Fraction(1, 2**m), "curvature_limit": Fraction(0)},
        {"tilde_partial": "sum_{k<m} 2^{-k-1}", "tilde": "sum_{k>=0} 2^{-k-1} = 1", "discrepancy": "2^{-m}"},
        2,
        notes=f"infinite generator family truncated at m={m}; partial sums miss 2^-{m}; A_2 vanishes on xi_(1^j) for j < m",
        slack=lambda k: Fraction(m, 2**k),
    )


def shift_and_zero_limit(depth: int, backend: str = sc.EXACT) -> DenseTuple:
    """The limit tuple on ``span{xi_{1^j} : j < depth}``: ``A_1`` the (truncated) shift, ``A_2 = 0``."""
    one = sc.one(backend)
    a1 = [[one if r == c + 1 else 0 * one for c in range(depth)] for r in range(depth)]
    a2 = [[0 * one] * depth for _ in range(depth)]
    return make_dense([a1, a2], backend)


def monomial_domain_words(gens, depth: int) -> list[Word]:
    """Words ``w`` with ``|w| < depth`` having no suffix equal to a generator word."""
    targets = []
    for g in gens:
        if len(g.head) != 1 or g.chains:
            raise ValueError("monomial generators only")
        (_, w), = g.head
        targets.append(w)
    n = gens[0].n if gens else 2
    out = []
    for w in iter_words_below(n, depth):
        if not any(len(t) <= len(w) and w[len(w) - len(t) :] == t for t in targets):
            out.append(w)
    return out


def entry_eigenvector(lam=Fraction(1, 2), n: int = 2) -> CatalogEntry:
    """Compression to the co-invariant subspace generated by ``nu_lam``.

    Its complement is generated by the wandering vector
    ``(L_1 - lam) nu_lam / sqrt(1 - |lam|^2)``; the tuple is equivalent to
    the one-dimensional decaying atomic tuple with ``u = 1``.
    """
    r = sc.abs2(lam)
    if r >= 1:
        raise ValueError("|lambda| must be < 1")
    exact_ok = sc.is_exact(lam)

    def build(backend):
        lam_b = sc.convert(lam, backend)
        return make_compression(n, 1, [gen.eigenvector_complement(n, lam_b, backend)], COMPLEMENT, backend)

    rr = _frac(r) if not isinstance(r, Fraction) else r
    return CatalogEntry(
        "eigenvector",
        {"lam": lam, "n": n, "r": rr},
        build,
        {"curvature": one_dim_curvature(n, rr), "euler": 1 - Fraction(1, n), "pure_rank": 1},
        {"curvature": "(n-1)(1-|lam|^2)/(n-|lam|^2)", "euler": "1 - 1/n"},
        n,
        level={"trace": lambda k: one_dim_trace(n, rr, k)} if exact_ok else {},
        backends=(sc.EXACT, sc.FLOAT) if exact_ok else (sc.FLOAT,),
    )


def three_letter_generator(a: float, b: float) -> gen.Generator:
    """Unit vector orthogonal to ``a xi_1 + b xi_2`` and ``b xi_2 + a xi_3``."""
    if a <= 0 or b <= 0 or abs(a * a + b * b - 1) > 1e-12:
        raise ValueError("need a, b > 0 with a^2 + b^2 = 1")
    s = math.sqrt(1 + b * b)
    return gen.finite(3, {(1,): b / s, (2,): -a / s, (3,): b / s}, backend=sc.FLOAT, label="t")


def entry_three_letter(beta: float = 0.8, limit: bool = False) -> CatalogEntry:
    """Domain spanned by ``xi_e`` and the orbits of ``x = a xi_1 + b xi_2``, ``y = b xi_2 + a xi_3``.

    ``limit=True`` gives the limit domain ``span{xi_e, xi_{u2}}``.
    """
    if limit:

        def build(backend):
            gens = [gen.monomial(3, (1,), backend=backend), gen.monomial(3, (3,), backend=backend)]
            return make_compression(3, 1, gens, COMPLEMENT, backend)

        return CatalogEntry(
            "three_letter_limit",
            {"limit": True},
            build,
            {"euler": Fraction(1, 3), "pure_rank": 1},
            {"euler": "1/3", "rank_k": "(3^{k-1} + 1)/2"},
            3,
            level={"rank": lambda k: (3 ** (k - 1) + 1) // 2},
        )
    alpha = math.sqrt(1 - beta * beta)

    def build(backend):
        if backend != sc.FLOAT:
            raise ValueError("three-letter wandering example needs the float backend")
        return make_compression(3, 1, [three_letter_generator(alpha, beta)], COMPLEMENT, sc.FLOAT)

    return CatalogEntry(
        "three_letter",
        {"alpha": alpha, "beta": beta},
        build,
        {"euler": Fraction(2, 3), "pure_rank": 1},
        {"euler": "2/3", "rank_k": "3^{k-1}"},
        3,
        level={"rank": lambda k: 3 ** (k - 1)},
        backends=(sc.FLOAT,),
    )


def truncation_tuple(n: int, l: int, backend: str = sc.EXACT) -> DenseTuple:
    """``A_l = Q_l L |_{ran Q_l}`` as a dense tuple."""
    from .cpmap import dense_truncation

    return dense_truncation(LeftRegular(n, 1, backend), l).tuple


def entry_truncation_family(l: int = 2, n: int = 2) -> CatalogEntry:
    """``L`` compressed to words of length ``< l``: nilpotent, ``chi = 0``, stable rank ``(n^l - 1)/(n - 1)``."""
    N = words_below(n, l)
    return CatalogEntry(
        "truncation_family",
        {"n": n, "l": l},
        lambda backend: truncation_tuple(n, l, backend),
        {"curvature": Fraction(0), "euler": Fraction(0), "pure_rank": 1, "stable_rank": N},
        {"rank_k": "(n^l - 1)/(n - 1) for k >= l", "euler": "0", "limit_euler": "1"},
        n,
        level={"rank": lambda k: N if k >= l else words_below(n, k), "trace": lambda k: N if k >= l else words_below(n, k)},
        slack=lambda k: Fraction((n - 1) * N, n**k),
        notes="the limit tuple (l -> infinity) is L with K = chi = 1",
    )


def symmetric_fock_tuple(n: int, depth: int) -> DenseTuple:
    """Commuting multiplication tuple on symmetric Fock space, truncated to degree ``< depth``.

    ``M_i s_b = sqrt((b_i + 1)/(|b| + 1)) s_{b + e_i}`` on the orthonormal basis
    ``s_b`` indexed by multi-indices.
    """
    labels = []
    for d in range(depth):
        labels.extend(_multi_indices(n, d))
    index = {b: i for i, b in enumerate(labels)}
    mats = []
    for i in range(n):
        m = np.zeros((len(labels), len(labels)))
        for col, b in enumerate(labels):
            nb = list(b)
            nb[i] += 1
            row = index.get(tuple(nb))
            if row is not None:
                m[row, col] = math.sqrt((b[i] + 1) / (sum(b) + 1))
        mats.append(m)
    return make_dense(mats, sc.FLOAT)


def _multi_indices(n: int, d: int) -> list:
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _multi_indices(n - 1, d - first):
            out.append((first,) + rest)
    return out


def entry_symmetric_fock(n: int = 2, depth: int = 14) -> CatalogEntry:
    """Commuting tuple on symmetric Fock space truncated at ``depth``; ``K = chi = 0``."""
    return CatalogEntry(
        "symmetric_fock",
        {"n": n, "depth": depth},
        lambda backend: symmetric_fock_tuple(n, depth),
        {"curvature": Fraction(0), "euler": Fraction(0), "pure_rank": 1},
        {"trace_k": "C(k + n - 1, n)", "curvature": "0"},
        n,
        level={"trace": lambda k: math.comb(k + n - 1, n)},
        backends=(sc.FLOAT,),
        slack=lambda k: Fraction((n - 1) * math.comb(k + n - 1, n), n**k),
        notes="valid for levels k <= depth",
    )


# ----------------------------------------------------------------- registry

ENTRIES = {
    "left_regular": (entry_left_regular, {"n": int, "alpha": int}),
    "decaying": (entry_decaying, {"u": str, "r": "list", "n": int}),
    "decaying_lambda": (entry_decaying_lambda, {"lam": "scalar", "n": int, "d": int}),
    "curvature_range": (entry_curvature_range, {"r": "scalar"}),
    "binary_expansion": (entry_binary_expansion, {"bits": "bits"}),
    "polynomial_isometry": (entry_polynomial_isometry, {"n": int, "coeffs": "dict"}),
    "polynomial_subspace": (subspace_entry_polynomial, {"n": int, "coeffs": "dict"}),
    "cyclic_range": (entry_cyclic_range, {"r": "scalar", "n": int}),
    "xi_e_perp": (entry_xi_e_perp, {"n": int}),
    "shift_and_zero": (entry_shift_and_zero, {"m": int}),
    "eigenvector": (entry_eigenvector, {"lam": "scalar", "n": int}),
    "three_letter": (entry_three_letter, {"beta": float, "limit": bool}),
    "truncation_family": (entry_truncation_family, {"l": int, "n": int}),
    "symmetric_fock": (entry_symmetric_fock, {"n": int, "depth": int}),
}


def entry_names() -> list[str]:
    return sorted(ENTRIES)


def coerce_param(kind, value):
    if kind is int:
        return int(value)
    if kind is float:
        return float(value)
    if kind is bool:
        return value if isinstance(value, bool) else str(value).lower() in ("1", "true", "yes")
    if kind is str:
        return str(value)
    if kind == "scalar":
        return Fraction(value) if isinstance(value, (str, int, Fraction)) else _frac(value)
    if kind == "bits":
        if isinstance(value, str):
            return [int(c) for c in value if c in "01"]
        return [int(b) for b in value]
    if kind == "list":
        if isinstance(value, str):
            return [Fraction(x) for x in value.split(",") if x]
        return [Fraction(x) if isinstance(x, (str, int)) else _frac(x) for x in value]
    if kind == "dict":
        return dict(value)
    raise ValueError(f"unknown parameter kind {kind!r}")


def get_entry(name: str, **params) -> CatalogEntry:
    if name not in ENTRIES:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(entry_names())}")
    fn, schema = ENTRIES[name]
    unknown = set(params) - set(schema)
    if unknown:
        raise KeyError(f"entry {name!r} has no parameter(s) {sorted(unknown)}; parameters: {sorted(schema)}")
    return fn(**{k: coerce_param(schema[k], v) for k, v in params.items()})


def reference_entries() -> list[CatalogEntry]:
    """The default verification corpus."""
    return [
        entry_left_regular(2, 1),
        entry_left_regular(3, 4),
        entry_left_regular(2, 0),
        entry_decaying("1", r=[Fraction(1, 2)], n=2),
        entry_decaying("1", r=[Fraction(0)], n=2),
        entry_decaying("12", r=[Fraction(1, 4), Fraction(1)], n=3),
        entry_decaying("121", r=[Fraction(1, 4), 1, 1], n=2),
        entry_curvature_range(Fraction(0)),
        entry_curvature_range(Fraction(1, 2)),
        entry_curvature_range(Fraction(1, 3)),
        entry_binary_expansion([1]),
        entry_binary_expansion([]),
        entry_binary_expansion([1, 1]),
        entry_binary_expansion([1, 0, 1]),
        entry_polynomial_isometry(2, {"2": 1}),
        entry_polynomial_isometry(3, {"11": 1}),
        subspace_entry_polynomial(2, {"2": 1}),
        entry_cyclic_range(Fraction(1, 4), 3),
        entry_cyclic_range(Fraction(2, 9), 3),
        entry_xi_e_perp(2),
        entry_xi_e_perp(3),
        entry_shift_and_zero(4),
        entry_eigenvector(Fraction(0)),
        entry_eigenvector(Fraction(1, 2)),
        entry_three_letter(0.8),
        entry_three_letter(limit=True),
        entry_truncation_family(2),
        entry_truncation_family(3),
        entry_symmetric_fock(2, 14),
    ]


__all__ = [
    "CatalogEntry",
    "ENTRIES",
    "entry_names",
    "get_entry",
    "reference_entries",
    "one_dim_trace",
    "one_dim_trace_series",
    "one_dim_trace_short_form",
    "one_dim_curvature",
    "entry_left_regular",
    "entry_decaying",
    "entry_curvature_range",
    "entry_decaying_lambda",
    "decay_sweep",
    "binary_generators",
    "binary_value",
    "entry_binary_expansion",
    "polynomial_generator",
    "entry_polynomial_isometry",
    "subspace_entry_polynomial",
    "cyclic_coefficients",
    "cyclic_generator",
    "entry_cyclic_range",
    "entry_xi_e_perp",
    "shift_and_zero_generators",
    "entry_shift_and_zero",
    "shift_and_zero_limit",
    "monomial_domain_words",
    "entry_eigenvector",
    "three_letter_generator",
    "entry_three_letter",
    "truncation_tuple",
    "entry_truncation_family",
    "symmetric_fock_tuple",
    "entry_symmetric_fock",
]
