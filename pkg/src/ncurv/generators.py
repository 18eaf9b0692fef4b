"""Wandering-vector generators: finite head plus geometric chains.

A generator is a vector of ``H_n^(alpha)`` of the form

    head + sum over chains of  sum_{t >= t0} c * q**(t - t0) * xi[copy : core + letter^t]

where ``head`` is finitely supported, ``core`` does not end in ``letter`` and
``|q| < 1``. This covers every finitely supported vector and the analytic
families used for eigenvector compressions. All queries (coefficients, left
shifts and their adjoints, tails past a length, inner products) are closed
form, so the exact backend stays exact even for infinite support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from . import scalars as sc
from .fock import FockVector, inner_product
from .words import EMPTY, Word, check_word, strip_prefix, word_key, word_str


def _canonical(stem: Word, letter: int) -> tuple[Word, int]:
    """Split ``stem`` into (core, b) with ``stem == core + letter^b`` and core not ending in letter."""
    b = 0
    while b < len(stem) and stem[len(stem) - 1 - b] == letter:
        b += 1
    return stem[: len(stem) - b], b


@dataclass(frozen=True)
class Chain:
    copy: int
    core: Word
    letter: int
    t0: int
    coef: object
    ratio: object

    def coefficient_at(self, copy: int, w: Word):
        if copy != self.copy or len(w) < len(self.core) + self.t0:
            return None
        if w[: len(self.core)] != self.core:
            return None
        rest = w[len(self.core) :]
        if any(x != self.letter for x in rest):
            return None
        t = len(rest)
        if t < self.t0:
            return None
        return self.coef * self.ratio ** (t - self.t0)

    def first_length(self) -> int:
        return len(self.core) + self.t0

    def is_finite(self) -> bool:
        return not self.ratio


@dataclass(frozen=True)
class Generator:
    """A vector with finite head and geometric chains; see module docstring."""

    n: int
    alpha: int
    backend: str
    head: dict = field(default_factory=dict)
    chains: tuple = ()
    label: str = ""

    def __post_init__(self):
        sc.check_backend(self.backend)
        clean = {}
        for (copy, w), v in self.head.items():
            check_word(tuple(w), self.n)
            if not 0 <= copy < self.alpha:
                raise ValueError(f"copy {copy} outside 0..{self.alpha - 1}")
            v = sc.convert(v, self.backend)
            if v:
                clean[(copy, tuple(w))] = v
        object.__setattr__(self, "head", clean)
        chains = []
        for ch in self.chains:
            if sc.abs2(ch.ratio) >= 1:
                raise ValueError(f"chain ratio must satisfy |q| < 1, got {ch.ratio!r}")
            if not ch.coef:
                continue
            chains.append(
                Chain(ch.copy, ch.core, ch.letter, ch.t0, sc.convert(ch.coef, self.backend), sc.convert(ch.ratio, self.backend))
            )
        object.__setattr__(self, "chains", tuple(chains))

    # -------------------------------------------------------------- builders

    @classmethod
    def finite(cls, vec: FockVector, label: str = "") -> "Generator":
        return cls(vec.n, vec.alpha, vec.backend, dict(vec.entries), (), label)

    @classmethod
    def geometric(
        cls,
        n: int,
        stem: Word,
        letter: int,
        coef,
        ratio,
        head: dict | None = None,
        copy: int = 0,
        alpha: int = 1,
        backend: str = sc.FLOAT,
        label: str = "",
    ) -> "Generator":
        """``head + sum_{m >= 0} coef * ratio^m * xi[stem + letter^m]``."""
        stem = check_word(tuple(stem), n)
        core, b = _canonical(stem, letter)
        chain = Chain(copy, core, letter, b, coef, ratio)
        return cls(n, alpha, backend, dict(head or {}), (chain,), label)

    # -------------------------------------------------------------- queries

    def coefficient(self, copy: int, w: Word):
        value = self.head.get((copy, tuple(w)), sc.zero(self.backend))
        for ch in self.chains:
            c = ch.coefficient_at(copy, tuple(w))
            if c is not None:
                value = value + c
        return value

    def is_finite(self) -> bool:
        return all(ch.is_finite() for ch in self.chains)

    def min_degree(self) -> int:
        lengths = [len(w) for (_, w) in self.head] + [ch.first_length() for ch in self.chains]
        if not lengths:
            raise ValueError("zero generator has no degree")
        return min(lengths)

    def max_degree(self) -> float:
        if not self.is_finite():
            return math.inf
        lengths = [len(w) for (_, w) in self.head] + [ch.first_length() for ch in self.chains]
        return max(lengths) if lengths else 0

    def is_zero(self) -> bool:
        return not self.head and not self.chains

    def truncated(self, depth: int) -> FockVector:
        """Finite part on words of length ``< depth``."""
        entries = {k: v for k, v in self.head.items() if len(k[1]) < depth}
        for ch in self.chains:
            t = ch.t0
            while len(ch.core) + t < depth:
                key = (ch.copy, ch.core + (ch.letter,) * t)
                entries[key] = entries.get(key, sc.zero(self.backend)) + ch.coef * ch.ratio ** (t - ch.t0)
                t += 1
                if not ch.ratio:
                    break
        return FockVector(self.n, entries, self.alpha, self.backend)

    def _with(self, head, chains) -> "Generator":
        return Generator(self.n, self.alpha, self.backend, head, tuple(chains), self.label)

    def shift(self, p: Word) -> "Generator":
        """``L_p`` applied: prefix ``p`` to every support word."""
        p = tuple(p)
        head = {(c, p + w): v for (c, w), v in self.head.items()}
        chains = []
        for ch in self.chains:
            if ch.core:
                chains.append(Chain(ch.copy, p + ch.core, ch.letter, ch.t0, ch.coef, ch.ratio))
            else:
                core, b = _canonical(p, ch.letter)
                chains.append(Chain(ch.copy, core, ch.letter, ch.t0 + b, ch.coef, ch.ratio))
        return self._with(head, chains)

    def shift_adjoint(self, p: Word) -> "Generator":
        """``L_p^*`` applied: keep words with prefix ``p`` and strip it."""
        p = tuple(p)
        head = {}
        for (c, w), v in self.head.items():
            rest = strip_prefix(w, p)
            if rest is not None:
                head[(c, rest)] = v
        chains = []
        for ch in self.chains:
            rest = strip_prefix(ch.core, p)
            if rest is not None:
                chains.append(Chain(ch.copy, rest, ch.letter, ch.t0, ch.coef, ch.ratio))
                continue
            tail = strip_prefix(p, ch.core)
            if tail is None or any(x != ch.letter for x in tail):
                continue
            b = len(tail)
            start = max(ch.t0, b)
            if ch.ratio or start == ch.t0:
                coef = ch.coef * ch.ratio ** (start - ch.t0)
                if coef:
                    chains.append(Chain(ch.copy, EMPTY, ch.letter, start - b, coef, ch.ratio))
        return self._with(head, chains)

    def tail(self, m: int) -> "Generator":
        """Restriction to words of length ``>= m`` (i.e. ``(I - Q_m)`` applied)."""
        head = {k: v for k, v in self.head.items() if len(k[1]) >= m}
        chains = []
        for ch in self.chains:
            start = max(ch.t0, m - len(ch.core))
            if start == ch.t0:
                chains.append(ch)
            elif ch.ratio:
                chains.append(Chain(ch.copy, ch.core, ch.letter, start, ch.coef * ch.ratio ** (start - ch.t0), ch.ratio))
        return self._with(head, chains)

    def support_prefixes(self, max_len: int) -> set:
        """``(copy, p)`` with ``|p| <= max_len`` such that ``L_p^*`` of this is nonzero."""
        out = set()
        for (c, w) in self.head:
            for j in range(min(len(w), max_len) + 1):
                out.add((c, w[:j]))
        for ch in self.chains:
            for j in range(min(len(ch.core), max_len) + 1):
                out.add((ch.copy, ch.core[:j]))
            b = 1
            while len(ch.core) + b <= max_len:
                if ch.ratio or b <= ch.t0:
                    out.add((ch.copy, ch.core + (ch.letter,) * b))
                else:
                    break
                b += 1
        return out

    def __add__(self, other: "Generator") -> "Generator":
        if not isinstance(other, Generator):
            return NotImplemented
        if (other.n, other.alpha, other.backend) != (self.n, self.alpha, self.backend):
            raise ValueError("generator model mismatch")
        head = dict(self.head)
        for k, v in other.head.items():
            head[k] = head.get(k, sc.zero(self.backend)) + v
        return self._with(head, self.chains + other.chains)

    def __sub__(self, other: "Generator") -> "Generator":
        return self + other.scale(-1)

    def scale(self, c) -> "Generator":
        c = sc.convert(c, self.backend)
        if not c:
            return self._with({}, ())
        head = {k: v * c for k, v in self.head.items()}
        chains = [Chain(ch.copy, ch.core, ch.letter, ch.t0, ch.coef * c, ch.ratio) for ch in self.chains]
        return self._with(head, chains)

    def __repr__(self):
        head = " + ".join(f"{v}*xi[{c}:{word_str(w)}]" for (c, w), v in sorted(self.head.items(), key=lambda kv: (kv[0][0], word_key(kv[0][1]))))
        chains = " + ".join(
            f"sum_t {ch.coef}*({ch.ratio})^(t-{ch.t0}) xi[{ch.copy}:{word_str(ch.core)}{ch.letter}^t, t>={ch.t0}]" for ch in self.chains
        )
        body = " + ".join(x for x in (head, chains) if x) or "0"
        return f"Generator({self.label + ': ' if self.label else ''}{body})"


def _chain_inner(a: Chain, b: Chain, backend: str):
    if a.copy != b.copy:
        return sc.zero(backend)
    if a.letter == b.letter:
        if a.core != b.core:
            return sc.zero(backend)
        start = max(a.t0, b.t0)
        ca = a.coef * a.ratio ** (start - a.t0) if (a.ratio or start == a.t0) else 0
        cb = b.coef * b.ratio ** (start - b.t0) if (b.ratio or start == b.t0) else 0
        if not ca or not cb:
            return sc.zero(backend)
        return ca * sc.conj(cb) / (1 - a.ratio * sc.conj(b.ratio))
    total = sc.zero(backend)
    candidates = set()
    if a.t0 == 0:
        candidates.add(a.core)
    if b.t0 == 0:
        candidates.add(b.core)
    for w in sorted(candidates, key=word_key):
        x = a.coefficient_at(a.copy, w)
        y = b.coefficient_at(b.copy, w)
        if x is not None and y is not None:
            total = total + x * sc.conj(y)
    return total


def generator_inner(x: Generator, y: Generator):
    """``<x, y>`` over the full (possibly infinite) supports."""
    if x.backend != y.backend:
        raise sc.BackendError(f"backend mismatch: {x.backend} vs {y.backend}")
    if (x.n, x.alpha) != (y.n, y.alpha):
        raise ValueError("generator model mismatch")
    terms = []
    for key in sorted(set(x.head) & set(y.head), key=lambda k: (k[0], word_key(k[1]))):
        terms.append(x.head[key] * sc.conj(y.head[key]))
    for key, v in sorted(x.head.items(), key=lambda kv: (kv[0][0], word_key(kv[0][1]))):
        for ch in y.chains:
            c = ch.coefficient_at(*key)
            if c is not None:
                terms.append(v * sc.conj(c))
    for key, v in sorted(y.head.items(), key=lambda kv: (kv[0][0], word_key(kv[0][1]))):
        for ch in x.chains:
            c = ch.coefficient_at(*key)
            if c is not None:
                terms.append(c * sc.conj(v))
    for a in x.chains:
        for b in y.chains:
            terms.append(_chain_inner(a, b, x.backend))
    return sc.exact_sum(terms, x.backend)


def generator_norm_sq(x: Generator):
    return generator_inner(x, x)


def orbit_inner(g1: Generator, v1: Word, g2: Generator, v2: Word, beyond: int = 0):
    """``<(I - Q_m) L_{v1} g1, (I - Q_m) L_{v2} g2>`` with ``m = beyond``."""
    v1, v2 = tuple(v1), tuple(v2)
    if len(v1) <= len(v2):
        p = strip_prefix(v2, v1)
        if p is None:
            return sc.zero(g1.backend)
        left = g1.shift_adjoint(p)
        right = g2
        cut = beyond - len(v2)
        flip = False
    else:
        p = strip_prefix(v1, v2)
        if p is None:
            return sc.zero(g1.backend)
        left = g2.shift_adjoint(p)
        right = g1
        cut = beyond - len(v1)
        flip = True
    if cut > 0:
        left, right = left.tail(cut), right.tail(cut)
    value = generator_inner(left, right)
    return sc.conj(value) if flip else value


def wandering_defects(gens: Iterable[Generator], depth: int, tol: float = 1e-9) -> list[str]:
    """Violations of orthonormality of ``{L_w g_j : |w| <= depth}``; empty means wandering."""
    gens = list(gens)
    problems = []
    for j, g in enumerate(gens):
        nrm = generator_norm_sq(g)
        if not _is_value(nrm, 1, g.backend, tol):
            problems.append(f"generator {j} has norm^2 {nrm}")
    for i, gi in enumerate(gens):
        for j, gj in enumerate(gens):
            for (copy, w) in sorted(gj.support_prefixes(depth), key=lambda k: (k[0], word_key(k[1]))):
                if i == j and not w:
                    continue
                val = generator_inner(gi, gj.shift_adjoint(w))
                if not _is_value(val, 0, g.backend, tol):
                    problems.append(f"<L_{word_str(w)} g{i}, g{j}> = {val}")
    return problems


def _is_value(x, target, backend: str, tol: float) -> bool:
    if backend == sc.EXACT:
        return x == target
    return abs(complex(x) - target) <= tol


# ------------------------------------------------------------------ families

def eigenvector(n: int, lam, backend: str = sc.FLOAT, letter: int = 1) -> Generator:
    """``nu_lambda = sqrt(1-|lam|^2) * sum_k conj(lam)^k xi_{letter^k}``.

    Exact backend needs ``1 - |lam|^2`` to be a rational square.
    """
    r = sc.abs2(lam)
    if r >= 1:
        raise ValueError("|lambda| must be < 1")
    c = _sqrt(1 - r, backend)
    return Generator.geometric(n, (), letter, c, sc.conj(lam), backend=backend, label=f"nu({lam})")


def eigenvector_complement(n: int, lam, backend: str = sc.FLOAT, letter: int = 1) -> Generator:
    """Unit wandering vector generating the invariant complement of the eigenvector's domain.

    ``zeta = -lam xi_e + (1 - |lam|^2) sum_{m>=1} conj(lam)^(m-1) xi_{letter^m}``,
    i.e. ``(L_letter - lam) nu_lambda / sqrt(1 - |lam|^2)``. Coefficients are
    polynomial in ``lam`` so rational ``lam`` keeps everything exact.
    """
    r = sc.abs2(lam)
    if r >= 1:
        raise ValueError("|lambda| must be < 1")
    head = {(0, EMPTY): -lam} if lam else {}
    return Generator.geometric(
        n, (letter,), letter, 1 - r, sc.conj(lam), head=head, backend=backend, label=f"zeta({lam})"
    )


def _sqrt(x, backend: str):
    if backend == sc.FLOAT:
        return math.sqrt(float(x))
    from fractions import Fraction

    x = Fraction(x)
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num != x.numerator or den * den != x.denominator:
        raise ValueError(f"{x} is not a rational square; use the float backend")
    return Fraction(num, den)


def monomial(n: int, w: Word, copy: int = 0, alpha: int = 1, backend: str = sc.FLOAT) -> Generator:
    return Generator.finite(FockVector.basis(n, tuple(w), copy, alpha, backend)).__class__(
        n, alpha, backend, {(copy, tuple(w)): sc.one(backend)}, (), f"xi_{word_str(tuple(w))}"
    )


def finite(n: int, coeffs: dict, alpha: int = 1, backend: str = sc.FLOAT, label: str = "") -> Generator:
    """Finite generator from ``{word or (copy, word): coef}``."""
    entries = {}
    for key, v in coeffs.items():
        if isinstance(key, tuple) and len(key) == 2 and isinstance(key[1], tuple):
            entries[key] = v
        else:
            entries[(0, tuple(key))] = v
    return Generator(n, alpha, backend, entries, (), label)


def as_fock(g: Generator, depth: int) -> FockVector:
    return g.truncated(depth)


def fock_inner_generator(x: FockVector, g: Generator):
    """``<x, g>`` for finite ``x``."""
    terms = [v * sc.conj(g.coefficient(c, w)) for (c, w), v in sorted(x.entries.items(), key=lambda kv: (kv[0][0], word_key(kv[0][1])))]
    return sc.exact_sum(terms, x.backend)


__all__ = [
    "Chain",
    "Generator",
    "generator_inner",
    "generator_norm_sq",
    "orbit_inner",
    "wandering_defects",
    "eigenvector",
    "eigenvector_complement",
    "monomial",
    "finite",
    "fock_inner_generator",
    "inner_product",
]
