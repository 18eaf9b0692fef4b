"""Finitely supported vectors in a multiplicity-``alpha`` Fock space.

Entries are keyed by ``(copy, word)``. The inner product is linear in the
first argument and conjugate-linear in the second:
``<x, y> = sum_k x_k * conj(y_k)``.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Iterable, Mapping

from . import scalars as sc
from .words import Word, check_word, word_key, word_str


class FockVector:
    __slots__ = ("n", "alpha", "backend", "_entries")

    def __init__(self, n: int, entries: Mapping | Iterable = (), alpha: int = 1, backend: str = sc.FLOAT):
        self.n = n
        self.alpha = alpha
        self.backend = sc.check_backend(backend)
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean = {}
        for key, value in items:
            copy, w = key
            if not 0 <= copy < alpha:
                raise ValueError(f"copy index {copy} outside 0..{alpha - 1}")
            check_word(w, n)
            value = sc.convert(value, backend)
            if value:
                clean[(copy, tuple(w))] = clean.get((copy, tuple(w)), sc.zero(backend)) + value
        self._entries = MappingProxyType({k: v for k, v in clean.items() if v})

    @classmethod
    def basis(cls, n: int, w: Word, copy: int = 0, alpha: int = 1, backend: str = sc.FLOAT):
        return cls(n, {(copy, tuple(w)): sc.one(backend)}, alpha, backend)

    @classmethod
    def zero(cls, n: int, alpha: int = 1, backend: str = sc.FLOAT):
        return cls(n, {}, alpha, backend)

    @property
    def entries(self) -> Mapping:
        return self._entries

    def __getitem__(self, key):
        return self._entries.get(key, sc.zero(self.backend))

    def __len__(self):
        return len(self._entries)

    def __bool__(self):
        return bool(self._entries)

    def support(self) -> list:
        return sorted(self._entries, key=lambda k: (k[0], word_key(k[1])))

    def _check(self, other: "FockVector"):
        if not isinstance(other, FockVector):
            raise TypeError(f"expected FockVector, got {type(other).__name__}")
        if other.backend != self.backend:
            raise sc.BackendError(f"backend mismatch: {self.backend} vs {other.backend}")
        if (other.n, other.alpha) != (self.n, self.alpha):
            raise ValueError(
                f"model mismatch: (n={self.n}, alpha={self.alpha}) vs (n={other.n}, alpha={other.alpha})"
            )

    def _like(self, entries) -> "FockVector":
        return FockVector(self.n, entries, self.alpha, self.backend)

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        out = dict(self._entries)
        for k, v in other._entries.items():
            out[k] = out.get(k, sc.zero(self.backend)) + v
        return self._like(out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other * (-1)

    def __neg__(self):
        return self * (-1)

    def __mul__(self, c) -> "FockVector":
        c = sc.convert(c, self.backend)
        return self._like({k: v * c for k, v in self._entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, FockVector)
            and (self.n, self.alpha, self.backend) == (other.n, other.alpha, other.backend)
            and dict(self._entries) == dict(other._entries)
        )

    def __hash__(self):
        return hash((self.n, self.alpha, frozenset(self._entries.items())))

    def norm_sq(self):
        return sc.exact_sum((sc.abs2(self._entries[k]) for k in self.support()), self.backend)

    def shift(self, i: int) -> "FockVector":
        """Left creation ``L_i``: ``xi_w -> xi_{iw}`` in every copy."""
        return self._like({(c, (i,) + w): v for (c, w), v in self._entries.items()})

    def shift_adjoint(self, i: int) -> "FockVector":
        """``L_i^*``: ``xi_{iw} -> xi_w``, everything else to zero."""
        return self._like({(c, w[1:]): v for (c, w), v in self._entries.items() if w and w[0] == i})

    def truncate(self, depth: int) -> "FockVector":
        """Keep only words of length ``< depth``."""
        return self._like({k: v for k, v in self._entries.items() if len(k[1]) < depth})

    def __repr__(self):
        parts = [f"{v}*xi[{c}:{word_str(w)}]" for (c, w), v in ((k, self._entries[k]) for k in self.support())]
        return f"FockVector(n={self.n}, alpha={self.alpha}, {' + '.join(parts) or '0'})"


def inner_product(x: FockVector, y: FockVector):
    """``<x, y>``: linear in ``x``, conjugate-linear in ``y``; fixed summation order."""
    x._check(y)
    small, large = (x, y) if len(x) <= len(y) else (y, x)
    keys = sorted((k for k in small.entries if k in large.entries), key=lambda k: (k[0], word_key(k[1])))
    return sc.exact_sum((x.entries[k] * sc.conj(y.entries[k]) for k in keys), x.backend)
