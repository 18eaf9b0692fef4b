"""Row contractions: dense tuples and the infinite models used by the catalog.

Every variant exposes ``apply(i, x)`` and ``apply_adjoint(i, x)`` on vectors of
its own model:

* ``DenseTuple``: numpy vectors (float) or tuples of exact scalars.
* ``LeftRegular``: :class:`FockVector` with ``alpha`` copies.
* ``DecayingAtomic``: :class:`FockVector` whose copy index is the ring node.
* ``Compression``: :class:`Generator` (finite vectors are promoted).
* ``DirectSum``: pairs ``(x, y)``.
* ``UnitaryMix``: vectors of the base tuple.

Letters are 1-based everywhere (``apply(A, 1, x)`` is ``A_1 x``).
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la
from . import scalars as sc
from .fock import FockVector
from .generators import Generator, generator_inner, wandering_defects
from .words import EMPTY, Word, check_word, word_str

COMPLEMENT = "complement"
SPAN = "span"
ORIENTATIONS = (COMPLEMENT, SPAN)

DEFAULT_FLOAT_TOL = 1e-9
# chains have infinitely many orbit prefixes; the wandering Gram test stops here
DEFAULT_WANDERING_DEPTH = 12


class ValidationError(ValueError):
    """Input data fails a structural requirement (contractivity, unitarity, wandering)."""


class RowContraction(abc.ABC):
    n: int
    backend: str

    def _letter(self, i: int) -> int:
        if not isinstance(i, (int, np.integer)) or not 1 <= i <= self.n:
            raise IndexError(f"letter {i} outside 1..{self.n}")
        return int(i)

    @abc.abstractmethod
    def apply(self, i: int, x):
        """``A_i x``."""

    @abc.abstractmethod
    def apply_adjoint(self, i: int, x):
        """``A_i^* x``."""

    @property
    def kind(self) -> str:
        return type(self).__name__


# ------------------------------------------------------------------- dense


@dataclass(frozen=True, eq=False)
class DenseTuple(RowContraction):
    """``n`` square matrices of one size; exact ones are :class:`ExactMatrix`."""

    matrices: tuple
    backend: str

    def __post_init__(self):
        if not self.matrices:
            raise ValueError("a dense tuple needs at least one matrix")
        shapes = {la.shape(m) for m in self.matrices}
        if len(shapes) != 1:
            raise ValueError(f"matrices have different shapes: {sorted(shapes)}")
        (r, c), = shapes
        if r != c:
            raise ValueError(f"matrices must be square, got {r}x{c}")
        for m in self.matrices:
            if la.is_exact_matrix(m) != (self.backend == sc.EXACT):
                raise sc.BackendError("matrix type does not match backend")

    @property
    def n(self) -> int:
        return len(self.matrices)

    @property
    def dim(self) -> int:
        return la.shape(self.matrices[0])[0]

    def _vec(self, x):
        if len(x) != self.dim:
            raise ValueError(f"vector of length {len(x)} for a {self.dim}-dimensional tuple")
        if self.backend == sc.FLOAT:
            return np.asarray(x, dtype=complex if np.iscomplexobj(x) else float)
        return tuple(sc.convert(v, sc.EXACT) for v in x)

    def _act(self, m, x):
        if self.backend == sc.FLOAT:
            return m @ x
        out = [Fraction(0)] * self.dim
        for r, row in m.rows.items():
            out[r] = sc.exact_sum([v * x[c] for c, v in sorted(row.items())], sc.EXACT)
        return tuple(out)

    def apply(self, i, x):
        return self._act(self.matrices[self._letter(i) - 1], self._vec(x))

    def apply_adjoint(self, i, x):
        return self._act(la.adjoint(self.matrices[self._letter(i) - 1]), self._vec(x))

    def __eq__(self, other):
        if not isinstance(other, DenseTuple) or other.backend != self.backend or other.n != self.n:
            return False
        if self.backend == sc.EXACT:
            return all(a == b for a, b in zip(self.matrices, other.matrices))
        return all(np.array_equal(a, b) for a, b in zip(self.matrices, other.matrices))

    __hash__ = None


def make_dense(matrices: Sequence, backend: str = sc.FLOAT) -> DenseTuple:
    """Build a dense tuple from nested lists / arrays / :class:`ExactMatrix`."""
    sc.check_backend(backend)
    out = []
    for m in matrices:
        if backend == sc.EXACT:
            out.append(m if la.is_exact_matrix(m) else la.ExactMatrix.from_dense(m))
        else:
            a = la.to_numpy(m) if la.is_exact_matrix(m) else np.asarray(m)
            a = a.astype(complex) if np.iscomplexobj(a) else a.astype(float)
            if a.ndim != 2:
                raise ValueError("each matrix must be 2-dimensional")
            out.append(a)
    return DenseTuple(tuple(out), backend)


def zero_tuple(n: int, dim: int, backend: str = sc.FLOAT) -> DenseTuple:
    if backend == sc.EXACT:
        return DenseTuple(tuple(la.ExactMatrix.zeros(dim) for _ in range(n)), backend)
    return DenseTuple(tuple(np.zeros((dim, dim)) for _ in range(n)), backend)


def row_sum(A: DenseTuple):
    """``sum_i A_i A_i^*``."""
    total = None
    for m in A.matrices:
        term = la.matmul(m, la.adjoint(m))
        total = term if total is None else total + term
    return total


@dataclass(frozen=True)
class ContractivityReport:
    ok: bool
    max_eigenvalue: float


def validate_row_contraction(A: DenseTuple, tol: float = DEFAULT_FLOAT_TOL) -> ContractivityReport:
    """Check ``sum_i A_i A_i^* <= I``; exact tuples are decided exactly."""
    s = row_sum(A)
    top = la.max_eigenvalue_hermitian(s) if A.dim else 0.0
    if A.backend == sc.EXACT:
        ok = la.exact_is_psd(la.identity(A.dim, sc.EXACT) - s)
    else:
        ok = top <= 1 + tol
    return ContractivityReport(bool(ok), top)


def require_contraction(A: DenseTuple, tol: float = DEFAULT_FLOAT_TOL) -> DenseTuple:
    rep = validate_row_contraction(A, tol)
    if not rep.ok:
        raise ValidationError(f"not a row contraction: largest eigenvalue of sum A_i A_i^* is {rep.max_eigenvalue:.12g}")
    return A


# ------------------------------------------------------------ left regular


@dataclass(frozen=True)
class LeftRegular(RowContraction):
    n: int
    alpha: int = 1
    backend: str = sc.EXACT

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("left regular tuple needs n >= 2")
        if self.alpha < 0:
            raise ValueError("multiplicity must be >= 0")

    def _check(self, x: FockVector):
        if not isinstance(x, FockVector) or (x.n, x.alpha) != (self.n, self.alpha):
            raise ValueError("vector does not live in this Fock space")
        if x.backend != self.backend:
            raise sc.BackendError("backend mismatch")

    def apply(self, i, x):
        self._check(x)
        return x.shift(self._letter(i))

    def apply_adjoint(self, i, x):
        self._check(x)
        return x.shift_adjoint(self._letter(i))


# ---------------------------------------------------------- decaying atomic


@dataclass(frozen=True)
class DecayingAtomic(RowContraction):
    """Ring of ``d = |u|`` nodes with a free tree hanging below each node.

    Basis ``xi[s, w]`` (``s`` 0-based) with ``w`` not ending in ``u[s]``:

    * ``A_i xi[s, e] = lam_s xi[s+1, e]`` if ``i == u[s]``, else ``xi[s, i]``;
    * ``A_i xi[s, w] = xi[s, iw]`` for ``w != e``.

    ``r`` holds ``|lam_s|^2``; it is all the defect computations need, so a
    decay like ``1/sqrt(2)`` stays exact as ``r = 1/2``. ``lam`` may be
    ``None`` in which case vector actions are unavailable.
    """

    n: int
    u: Word
    r: tuple
    lam: tuple | None = None
    backend: str = sc.EXACT

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("atomic representations need n >= 2")
        check_word(self.u, self.n)
        if not self.u:
            raise ValueError("ring word must be non-empty")
        if len(self.r) != len(self.u):
            raise ValueError("need one decay value per ring letter")
        for x in self.r:
            if x < 0 or x > 1:
                raise ValidationError(f"decay |lambda|^2 = {x} outside [0, 1]")
        if self.lam is not None and len(self.lam) != len(self.u):
            raise ValueError("need one lambda per ring letter")

    @property
    def d(self) -> int:
        return len(self.u)

    def is_basis(self, s: int, w: Word) -> bool:
        return 0 <= s < self.d and (not w or w[-1] != self.u[s])

    def basis_vector(self, s: int, w: Word = EMPTY) -> FockVector:
        if not self.is_basis(s, tuple(w)):
            raise ValueError(f"xi[{s}, {word_str(tuple(w))}] is not a basis vector (word ends in {self.u[s]})")
        return FockVector.basis(self.n, tuple(w), s, self.d, self.backend)

    def _check(self, x: FockVector):
        if not isinstance(x, FockVector) or (x.n, x.alpha) != (self.n, self.d):
            raise ValueError("vector does not live in this atomic model")
        if x.backend != self.backend:
            raise sc.BackendError("backend mismatch")
        for s, w in x.entries:
            if not self.is_basis(s, w):
                raise ValueError(f"xi[{s}, {word_str(w)}] is not a basis vector of this model")
        if self.lam is None:
            raise ValueError("this atomic model was built from |lambda|^2 only; vector actions need lambda")

    def apply(self, i, x):
        i = self._letter(i)
        self._check(x)
        out = {}
        for (s, w), v in x.entries.items():
            if w:
                key, c = (s, (i,) + w), v
            elif i == self.u[s]:
                key, c = ((s + 1) % self.d, EMPTY), v * self.lam[s]
            else:
                key, c = (s, (i,)), v
            out[key] = out.get(key, sc.zero(self.backend)) + c
        return FockVector(self.n, out, self.d, self.backend)

    def apply_adjoint(self, i, x):
        i = self._letter(i)
        self._check(x)
        out = {}
        for (s, w), v in x.entries.items():
            if w:
                if w[0] != i:
                    continue
                key, c = (s, w[1:]), v
            else:
                prev = (s - 1) % self.d
                if self.u[prev] != i:
                    continue
                key, c = (prev, EMPTY), v * sc.conj(self.lam[prev])
            out[key] = out.get(key, sc.zero(self.backend)) + c
        return FockVector(self.n, out, self.d, self.backend)

    def pure_rank(self, tol: float = 0.0) -> int:
        return sum(1 for x in self.r if (1 - x) > tol)


def make_decaying_atomic(u, lam=None, n: int | None = None, backend: str = sc.EXACT, r=None) -> DecayingAtomic:
    """Decaying atomic tuple from a ring word and either ``lam`` or ``r = |lam|^2``."""
    u = tuple(u) if not isinstance(u, str) else tuple(int(c) for c in u)
    if n is None:
        n = max(2, max(u))
    if lam is None and r is None:
        raise ValueError("give lam or r")
    if lam is not None:
        lam = tuple(sc.convert(x, backend) for x in lam)
        rr = tuple(sc.simplify(sc.abs2(x)) if backend == sc.EXACT else float(sc.abs2(x)) for x in lam)
        if r is not None and tuple(sc.convert(x, backend) for x in r) != rr:
            raise ValueError("lam and r disagree")
        r = rr
    else:
        r = tuple(sc.convert(x, backend) for x in r)
        if backend == sc.FLOAT:
            lam = tuple(math.sqrt(x) for x in r)
        else:
            lam = _exact_roots(r)
    for x in r:
        if x > 1:
            raise ValidationError(f"|lambda|^2 = {x} exceeds 1")
    return DecayingAtomic(n, u, tuple(r), lam, backend)


def _exact_roots(r):
    out = []
    for x in r:
        x = Fraction(x)
        a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if a * a != x.numerator or b * b != x.denominator:
            return None
        out.append(Fraction(a, b))
    return tuple(out)


# -------------------------------------------------------------- compression


@dataclass(frozen=True)
class Compression(RowContraction):
    """Left regular tuple cut down by wandering generators ``zeta_j``.

    ``orientation == "complement"``: the generators span an invariant subspace
    ``N = closed span {L_w zeta_j}``; the tuple is ``A_i = P_M L_i |_M`` on the
    co-invariant ``M = N^perp``, so ``A_i^* = L_i^* |_M``.

    ``orientation == "span"``: the tuple is the restriction ``A_i = L_i |_N``
    to ``N`` itself.
    """

    n: int
    alpha: int
    generators: tuple
    orientation: str = COMPLEMENT
    backend: str = sc.EXACT
    checked_depth: int = 0

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}")

    @property
    def m(self) -> int:
        return len(self.generators)

    def is_finite(self) -> bool:
        return all(g.is_finite() for g in self.generators)

    def _promote(self, x) -> Generator:
        if isinstance(x, FockVector):
            x = Generator.finite(x)
        if not isinstance(x, Generator) or (x.n, x.alpha) != (self.n, self.alpha):
            raise ValueError("vector does not live in this Fock space")
        if x.backend != self.backend:
            raise sc.BackendError("backend mismatch")
        return x

    def _probe_depth(self, x: Generator) -> int:
        lengths = [len(w) for (_, w) in x.head] + [ch.first_length() for ch in x.chains]
        return max(lengths, default=0) + 1

    def orbit_coordinates(self, x: Generator) -> dict:
        """``{(v, j): <x, L_v zeta_j>}`` over orbits that can meet ``x``."""
        x = self._promote(x)
        coords = {}
        depth = self._probe_depth(x)
        for j, g in enumerate(self.generators):
            for (copy, v) in sorted(x.support_prefixes(depth)):
                if any(c == copy for (c, _) in g.head) or any(ch.copy == copy for ch in g.chains):
                    val = generator_inner(x, g.shift(v))
                    if val:
                        coords[(v, j)] = val
        return coords

    def _orbit_sum(self, coords: dict) -> Generator:
        total = Generator(self.n, self.alpha, self.backend)
        for (v, j), c in sorted(coords.items()):
            total = total + self.generators[j].shift(v).scale(c)
        return total

    def in_domain(self, x, tol: float = DEFAULT_FLOAT_TOL) -> bool:
        x = self._promote(x)
        coords = self.orbit_coordinates(x)
        if self.orientation == COMPLEMENT:
            return all(_small(c, self.backend, tol) for c in coords.values())
        mass = sc.exact_sum([sc.abs2(c) for c in coords.values()], self.backend)
        return _close(mass, generator_inner(x, x), self.backend, tol)

    def apply(self, i, x):
        i = self._letter(i)
        x = self._promote(x)
        y = x.shift((i,))
        if self.orientation == SPAN:
            return y
        # x is orthogonal to every orbit, so only the v = e terms survive
        coords = {(EMPTY, j): generator_inner(y, g) for j, g in enumerate(self.generators)}
        return y - self._orbit_sum({k: c for k, c in coords.items() if c})

    def apply_adjoint(self, i, x, tol: float = DEFAULT_FLOAT_TOL):
        i = self._letter(i)
        x = self._promote(x)
        if self.orientation == COMPLEMENT:
            y = x.shift_adjoint((i,))
            if not self.in_domain(y, tol):
                raise ValidationError("L_i^* x left the co-invariant domain; is x in the domain?")
            return y
        coords = self.orbit_coordinates(x)
        moved = {(v[1:], j): c for (v, j), c in coords.items() if v and v[0] == i}
        return self._orbit_sum(moved)


def _small(x, backend, tol):
    return x == 0 if backend == sc.EXACT else abs(complex(x)) <= tol


def _close(a, b, backend, tol):
    return a == b if backend == sc.EXACT else abs(complex(a) - complex(b)) <= tol


def make_compression(
    n: int,
    alpha: int = 1,
    generators: Sequence = (),
    orientation: str = COMPLEMENT,
    backend: str | None = None,
    depth: int | None = None,
    tol: float = DEFAULT_FLOAT_TOL,
) -> Compression:
    """Compression of ``L^(alpha)`` by wandering generators.

    Finite vectors are promoted to generators. The Gram test on
    ``{L_w zeta_j : |w| <= depth}`` is complete for finite generators when
    ``depth`` is at least their largest degree (the default); for geometric
    chains it stops at ``depth`` (default 12).
    """
    gens = []
    for g in generators:
        if isinstance(g, FockVector):
            g = Generator.finite(g)
        if not isinstance(g, Generator):
            raise TypeError(f"generator must be a Generator or FockVector, got {type(g).__name__}")
        if (g.n, g.alpha) != (n, alpha):
            raise ValueError("generator lives in a different Fock space")
        gens.append(g)
    if backend is None:
        backend = gens[0].backend if gens else sc.EXACT
    if any(g.backend != backend for g in gens):
        raise sc.BackendError("generators use different backends")
    if depth is None:
        finite_deg = [int(g.max_degree()) for g in gens if g.is_finite()]
        depth = max(finite_deg, default=0)
        if not all(g.is_finite() for g in gens):
            depth = max(depth, DEFAULT_WANDERING_DEPTH)
    if any(g.is_zero() for g in gens):
        raise ValidationError("zero generator")
    problems = wandering_defects(gens, depth, tol)
    if problems:
        raise ValidationError("generators are not orthonormal-wandering: " + "; ".join(problems[:5]))
    return Compression(n, alpha, tuple(gens), orientation, backend, depth)


# ---------------------------------------------------------- sums and mixing


@dataclass(frozen=True)
class DirectSum(RowContraction):
    first: RowContraction
    second: RowContraction

    def __post_init__(self):
        if self.first.n != self.second.n:
            raise ValueError(f"direct sum needs equal n, got {self.first.n} and {self.second.n}")
        if self.first.backend != self.second.backend:
            raise sc.BackendError("direct sum needs one backend")

    @property
    def n(self) -> int:
        return self.first.n

    @property
    def backend(self) -> str:
        return self.first.backend

    def apply(self, i, x):
        a, b = x
        return (self.first.apply(i, a), self.second.apply(i, b))

    def apply_adjoint(self, i, x):
        a, b = x
        return (self.first.apply_adjoint(i, a), self.second.apply_adjoint(i, b))


def direct_sum(A: RowContraction, B: RowContraction) -> RowContraction:
    """Coordinate-wise direct sum; dense summands give a block-diagonal dense tuple."""
    if A.n != B.n:
        raise ValueError(f"direct sum needs equal n, got {A.n} and {B.n}")
    if isinstance(A, DenseTuple) and isinstance(B, DenseTuple):
        if A.backend != B.backend:
            raise sc.BackendError("direct sum needs one backend")
        return DenseTuple(tuple(la.block_diag(a, b) for a, b in zip(A.matrices, B.matrices)), A.backend)
    return DirectSum(A, B)


@dataclass(frozen=True, eq=False)
class UnitaryMix(RowContraction):
    """``B_j = sum_i A_i U[i, j]`` for a non-dense base tuple."""

    base: RowContraction
    U: object

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def backend(self) -> str:
        return self.base.backend

    def _entry(self, i, j):
        return self.U[i, j]

    def _combine(self, parts):
        total = None
        for c, v in parts:
            if not c:
                continue
            term = _scale_vec(v, c)
            total = term if total is None else _add_vec(total, term)
        return total

    def apply(self, j, x):
        j = self._letter(j)
        parts = [(self._entry(i - 1, j - 1), self.base.apply(i, x)) for i in range(1, self.n + 1)]
        out = self._combine(parts)
        return out if out is not None else _scale_vec(self.base.apply(1, x), 0)

    def apply_adjoint(self, j, x):
        j = self._letter(j)
        parts = [(sc.conj(self._entry(i - 1, j - 1)), self.base.apply_adjoint(i, x)) for i in range(1, self.n + 1)]
        out = self._combine(parts)
        return out if out is not None else _scale_vec(self.base.apply_adjoint(1, x), 0)


def _scale_vec(v, c):
    if isinstance(v, tuple) and v and isinstance(v[0], (FockVector, Generator, tuple, np.ndarray)):
        return tuple(_scale_vec(x, c) for x in v)
    if isinstance(v, tuple):
        return tuple(x * c for x in v)
    if isinstance(v, Generator):
        return v.scale(c)
    return v * c


def _add_vec(a, b):
    if isinstance(a, tuple) and a and isinstance(a[0], (FockVector, Generator, tuple, np.ndarray)):
        return tuple(_add_vec(x, y) for x, y in zip(a, b))
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def check_unitary(U, backend: str, tol: float = DEFAULT_FLOAT_TOL) -> None:
    if backend == sc.EXACT:
        if not la.is_exact_matrix(U):
            raise sc.BackendError("exact backend needs an exact unitary")
        if la.matmul(la.adjoint(U), U) != la.identity(U.shape[0], sc.EXACT):
            raise ValidationError("U^* U != I")
        return
    a = np.asarray(U)
    err = float(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0])))) if a.size else 0.0
    if err > tol:
        raise ValidationError(f"U^* U deviates from I by {err:.3g}")


def unitary_mix(A: RowContraction, U, tol: float = DEFAULT_FLOAT_TOL) -> RowContraction:
    """The tuple ``AU``: ``B_j = sum_i A_i U[i, j]``."""
    if A.backend == sc.EXACT and not la.is_exact_matrix(U):
        U = la.ExactMatrix.from_dense(U)
    if A.backend == sc.FLOAT:
        U = la.to_numpy(U)
    if la.shape(U) != (A.n, A.n):
        raise ValueError(f"U must be {A.n}x{A.n}")
    check_unitary(U, A.backend, tol)
    if isinstance(A, DenseTuple):
        return DenseTuple(tuple(_mix(A.matrices, U, j, A.backend) for j in range(A.n)), A.backend)
    return UnitaryMix(A, U)


def _mix(mats, U, j, backend):
    if backend == sc.EXACT:
        total = la.ExactMatrix.zeros(mats[0].shape[0])
        for i, m in enumerate(mats):
            c = U[i, j]
            if c:
                total = total + m.scale(c)
        return total
    return sum(m * U[i, j] for i, m in enumerate(mats))


# ----------------------------------------------------------- random inputs


def cayley_unitary(S) -> la.ExactMatrix:
    """``(I - S)(I + S)^{-1}`` for skew-Hermitian ``S``: an exact rational unitary."""
    S = S if la.is_exact_matrix(S) else la.ExactMatrix.from_dense(S)
    if S.H() != S.scale(-1):
        raise ValueError("Cayley transform needs a skew-Hermitian matrix")
    eye = la.ExactMatrix.identity(S.shape[0])
    return (eye - S) @ la.exact_inverse(eye + S)


def random_unitary(n: int, rng: np.random.Generator, backend: str = sc.FLOAT, complex_entries: bool = True):
    if backend == sc.FLOAT:
        z = rng.normal(size=(n, n)) + (1j * rng.normal(size=(n, n)) if complex_entries else 0)
        q, r = np.linalg.qr(z)
        d = np.diagonal(r)
        return q * (d / np.abs(d))
    rows = {}
    for i in range(n):
        for j in range(i, n):
            re = Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))
            im = Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))) if complex_entries else Fraction(0)
            if i == j:
                rows.setdefault(i, {})[i] = sc.GaussQ(0, im) if complex_entries else Fraction(0)
            else:
                v = sc.GaussQ(re, im)
                rows.setdefault(i, {})[j] = v
                rows.setdefault(j, {})[i] = -v.conjugate()
    return cayley_unitary(la.ExactMatrix((n, n), rows))


def random_contraction(n: int, dim: int, rng: np.random.Generator, backend: str = sc.FLOAT, rank: int | None = None) -> DenseTuple:
    """Random dense row contraction scaled so ``sum A_i A_i^*`` has norm just below 1.

    ``rank`` limits the rank of each matrix (useful for non-trivial Euler values).
    """
    mats = []
    for _ in range(n):
        if rank is None:
            m = rng.integers(-5, 6, size=(dim, dim))
        else:
            m = rng.integers(-3, 4, size=(dim, rank)) @ rng.integers(-3, 4, size=(rank, dim))
        mats.append(m)
    s = sum(m @ m.T for m in mats)
    top = float(np.max(np.linalg.eigvalsh(s.astype(float)))) if dim else 0.0
    scale = rng.uniform(0.6, 1.0)
    if backend == sc.FLOAT:
        c = math.sqrt(top) / math.sqrt(scale) if top > 0 else 1.0
        return make_dense([m / c for m in mats], sc.FLOAT)
    # rational c with c^2 >= top/scale, so the exact check has slack
    c = Fraction(math.ceil(math.sqrt(max(top, 1e-12) / scale) * 64 + 1), 64)
    return make_dense([[[Fraction(int(v)) / c for v in row] for row in m] for m in mats], sc.EXACT)


__all__ = [
    "COMPLEMENT",
    "SPAN",
    "ValidationError",
    "RowContraction",
    "DenseTuple",
    "LeftRegular",
    "DecayingAtomic",
    "Compression",
    "DirectSum",
    "UnitaryMix",
    "ContractivityReport",
    "make_dense",
    "zero_tuple",
    "row_sum",
    "validate_row_contraction",
    "require_contraction",
    "make_decaying_atomic",
    "make_compression",
    "direct_sum",
    "unitary_mix",
    "check_unitary",
    "cayley_unitary",
    "random_unitary",
    "random_contraction",
]
