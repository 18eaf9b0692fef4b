"""Scalar backends.

Two backends share one small interface:

* ``"exact"``: :class:`fractions.Fraction` for real data and :class:`GaussQ`
  (Gaussian rationals ``a + bi`` with rational parts) for complex data.
* ``"float"``: Python ``float``/``complex`` and numpy float64/complex128 arrays.

A computation picks its backend once; helpers here refuse to mix them.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Any, Iterable

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)


class BackendError(TypeError):
    """Raised when values from different scalar backends meet."""


class GaussQ:
    """Exact complex rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussQ):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussQ(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("GaussQ division by zero")
        num = self * o.conjugate()
        return GaussQ(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("GaussQ supports non-negative integer powers only")
        out, base = GaussQ(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GaussQ(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussQ)) and not isinstance(x, bool)


def is_float(x) -> bool:
    return isinstance(x, (float, complex)) or (
        isinstance(x, numbers.Number) and not is_exact(x) and not isinstance(x, bool)
    )


def backend_of(x) -> str:
    if is_exact(x):
        return EXACT
    if isinstance(x, numbers.Number):
        return FLOAT
    raise BackendError(f"not a scalar: {x!r}")


def check_backend(name: str) -> str:
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    return name


def zero(backend: str):
    return Fraction(0) if backend == EXACT else 0.0


def one(backend: str):
    return Fraction(1) if backend == EXACT else 1.0


def conj(x):
    if isinstance(x, (int, Fraction, float)):
        return x
    return x.conjugate()


def abs2(x):
    """``|x|^2`` without a square root (exact stays exact)."""
    if isinstance(x, GaussQ):
        return x.re * x.re + x.im * x.im
    if isinstance(x, complex):
        return x.real * x.real + x.imag * x.imag
    return x * x


def simplify(x):
    """Collapse a GaussQ with zero imaginary part to a Fraction."""
    if isinstance(x, GaussQ) and x.im == 0:
        return x.re
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def to_float(x):
    if isinstance(x, GaussQ):
        return complex(x) if x.im else float(x.re)
    if isinstance(x, complex):
        return x
    return float(x)


def convert(x, backend: str):
    """Convert a scalar into ``backend``; exact conversion only from exact/int input."""
    if backend == FLOAT:
        return to_float(x)
    if is_exact(x):
        return simplify(x) if not isinstance(x, GaussQ) else x
    raise BackendError(f"cannot convert inexact value {x!r} to the exact backend")


def parse_scalar(value, backend: str):
    """Parse a scalar from a JSON-shaped value.

    Accepts numbers, rational strings like ``"3/5"``, and ``[re, im]`` pairs.
    """
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex scalar must be [re, im], got {value!r}")
        re, im = (parse_scalar(v, backend) for v in value)
        if backend == EXACT:
            return simplify(GaussQ(re, im))
        return complex(re, im) if im else float(re)
    if isinstance(value, bool):
        raise ValueError("booleans are not scalars")
    if backend == EXACT:
        if isinstance(value, float):
            # floats are accepted only when they are exact dyadic literals like 0.5
            frac = Fraction(value)
            if frac.denominator > 2**20:
                raise ValueError(f"float literal {value!r} is not exactly representable; use 'p/q'")
            return frac
        return Fraction(value)
    if isinstance(value, str):
        return float(Fraction(value))
    return float(value)


def format_scalar(x):
    """JSON-friendly rendering: exact as strings, floats as numbers."""
    if isinstance(x, GaussQ):
        return [str(x.re), str(x.im)] if x.im else str(x.re)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, complex):
        return [x.real, x.imag] if x.imag else x.real
    return float(x)


def exact_sum(values: Iterable, backend: str):
    """Deterministic sum; float sums are exactly rounded (order independent)."""
    vals = list(values)
    if backend == EXACT:
        total = Fraction(0)
        for v in vals:
            total = total + v
        return simplify(total)
    if any(isinstance(v, complex) for v in vals):
        re = math.fsum(complex(v).real for v in vals)
        im = math.fsum(complex(v).imag for v in vals)
        return complex(re, im) if im else re
    return math.fsum(vals)
