"""Defect operators ``I - Phi^k(I)`` of row contractions: traces, ranks, purity.

``Phi_A(X) = sum_i A_i X A_i^*``. Each representation has its own path:

* dense tuples iterate ``Phi`` from ``I``;
* the left regular tuple uses the count of words of length ``< k``;
* decaying atomics use the diagonal of the defect in the ring-tree basis;
* compressions use generator orbits: with ``V_k`` the orbits ``L_v zeta_j``
  meeting ``ran Q_k`` and ``E`` the Gram matrix of their parts beyond
  length ``k``,

      tr = alpha N_k - |V_k| + tr E,    rk = alpha N_k - |V_k| + rk E,

  where ``N_k = (n^k - 1)/(n - 1)``. ``E`` is block diagonal over chains of
  prefix-related orbits, so its rank is computed block by block.

:func:`dense_truncation` builds, for any variant, a finite dense tuple whose
defects agree with the variant's up to a known identity block; it is the
brute-force oracle the specialised paths are tested against.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from . import scalars as sc
from .generators import Generator, generator_inner, generator_norm_sq, orbit_inner
from .operators import (
    COMPLEMENT,
    Compression,
    DecayingAtomic,
    DenseTuple,
    DirectSum,
    LeftRegular,
    RowContraction,
    UnitaryMix,
    _mix,
)
from .words import EMPTY, TruncatedBasis, basis_dimension, iter_words_below, word_key

DEFAULT_BASIS_CAP = 200_000
CAP_ENV = "NCURV_BASIS_CAP"


class ResourceLimitError(RuntimeError):
    """The requested level needs more basis vectors than the configured cap."""


def basis_cap(cap: int | None = None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get(CAP_ENV)
    return int(env) if env else DEFAULT_BASIS_CAP


def words_below(n: int, k: int) -> int:
    """``N_k``, the number of words of length ``< k``; 0 for ``k <= 0``."""
    return basis_dimension(n, k) if k > 0 else 0


def model_size(A: RowContraction, k: int) -> int:
    """Basis vectors a level-``k`` computation materialises.

    Left regular levels are closed counts and atomic levels sum over
    ``(ring node, word length)`` classes, so neither builds a basis.
    """
    if isinstance(A, DenseTuple):
        return A.dim
    if isinstance(A, LeftRegular):
        return 1
    if isinstance(A, DecayingAtomic):
        return A.d * k
    if isinstance(A, Compression):
        return A.alpha * words_below(A.n, k)
    if isinstance(A, DirectSum):
        return model_size(A.first, k) + model_size(A.second, k)
    if isinstance(A, UnitaryMix):
        return dense_model_size(A.base, k)
    raise TypeError(f"unsupported representation {type(A).__name__}")


def dense_model_size(A: RowContraction, k: int) -> int:
    """Size of the dense model used for a level-``k`` oracle computation."""
    if isinstance(A, DenseTuple):
        return A.dim
    if isinstance(A, (LeftRegular, Compression)):
        return A.alpha * words_below(A.n, k)
    if isinstance(A, DecayingAtomic):
        return A.d * words_below(A.n, k)
    if isinstance(A, DirectSum):
        return dense_model_size(A.first, k) + dense_model_size(A.second, k)
    if isinstance(A, UnitaryMix):
        return dense_model_size(A.base, k)
    raise TypeError(f"unsupported representation {type(A).__name__}")


def check_cap(A: RowContraction, k: int, cap: int | None = None) -> None:
    limit = basis_cap(cap)
    size = model_size(A, k)
    if size > limit:
        raise ResourceLimitError(f"level {k} needs {size} basis vectors, cap is {limit}")


# --------------------------------------------------------------- dense path


def phi_apply(A: DenseTuple, X):
    """``sum_i A_i X A_i^*``."""
    if la.shape(X) != (A.dim, A.dim):
        raise ValueError(f"X has shape {la.shape(X)}, expected {(A.dim, A.dim)}")
    if A.backend == sc.EXACT and not la.is_exact_matrix(X):
        X = la.ExactMatrix.from_dense(X)
    total = None
    for m in A.matrices:
        term = la.matmul(la.matmul(m, X), la.adjoint(m))
        total = term if total is None else total + term
    return total


def dense_defects(A: DenseTuple, k_max: int):
    """Yield ``(k, I - Phi^k(I))`` for ``k = 1..k_max``."""
    eye = la.identity(A.dim, A.backend)
    X = eye
    for k in range(1, k_max + 1):
        X = phi_apply(A, X)
        yield k, eye - X


def _matrix_trace_rank(D, backend: str, tol: float):
    tr = la.trace(D)
    if backend == sc.FLOAT:
        tr = float(np.real(tr))
    return tr, la.rank(D, tol)


# --------------------------------------------------------- atomic diagonal


def atomic_diagonal(A: DecayingAtomic, k: int):
    """``[(s, m, count, entry)]``: the defect entry on ``xi[s, w]`` with ``|w| = m < k``.

    The entry is ``1 - prod_{t=1}^{k-m} r[s-t]`` and ``count`` is the number of
    words of length ``m`` not ending in ``u[s]``. Words of length ``>= k``
    carry entry 0.
    """
    out = []
    one = sc.one(A.backend)
    for s in range(A.d):
        prod = one
        entries = []
        for t in range(1, k + 1):
            prod = prod * A.r[(s - t) % A.d]
            entries.append(one - prod)
        for m in range(k):
            count = 1 if m == 0 else (A.n - 1) * A.n ** (m - 1)
            out.append((s, m, count, entries[k - m - 1]))
    return out


def _atomic_level(A: DecayingAtomic, k: int, tol: float):
    diag = atomic_diagonal(A, k)
    trace = sc.exact_sum([c * e for (_, _, c, e) in diag], A.backend)
    if A.backend == sc.EXACT:
        rank = sum(c for (_, _, c, e) in diag if e != 0)
    else:
        top = max([1.0] + [float(e) for (_, _, _, e) in diag])
        rank = sum(c for (_, _, c, e) in diag if e > tol * top)
    return trace, rank


# ---------------------------------------------------------- compression path


def subspace_trace(n: int, generators, k: int, backend: str):
    """``tr(Q_k P_N)`` for ``N`` spanned by the orbits of ``generators``.

    Coefficient route: ``sum_j sum_{|x| < k} |zeta_j(x)|^2 N_{k-|x|}``.
    """
    terms = []
    for g in generators:
        vec = g.truncated(k)
        for (c, x) in vec.support():
            terms.append(sc.abs2(vec[(c, x)]) * words_below(n, k - len(x)))
    return sc.exact_sum(terms, backend)


@dataclass
class OrbitGram:
    """Tail Gram matrix ``E`` at one level, stored by blocks."""

    n_orbits: int
    trace: object
    blocks: list = field(default_factory=list)

    def rank(self, backend: str, tol: float) -> int:
        total = 0
        for block in self.blocks:
            if backend == sc.EXACT:
                total += la.exact_rank(block)
            else:
                total += la.hermitian_rank(block, tol)
        return total


def orbit_gram(n: int, generators, k: int, backend: str) -> OrbitGram:
    """Build ``E`` for the orbits meeting ``ran Q_k``; see module docstring."""
    gens = list(generators)
    n_orbits = 0
    tails = []
    for j, g in enumerate(gens):
        dmin = g.min_degree()
        dmax = g.max_degree()
        n_orbits += words_below(n, k - dmin)
        lo = 0 if dmax == math.inf else max(0, k - int(dmax))
        for length in range(lo, k - dmin):
            for v in _words_of_length(n, length):
                tails.append((v, j))
    index = {key: i for i, key in enumerate(tails)}
    prefixes = [sorted({p for (_, p) in g.support_prefixes(k)}, key=word_key) for g in gens]
    entries: dict = {}
    for a, (v1, j1) in enumerate(tails):
        for p in prefixes[j1]:
            v2 = v1 + p
            if len(v2) >= k:
                continue
            for j2 in range(len(gens)):
                b = index.get((v2, j2))
                if b is None or b < a and not p:
                    continue
                if not p and j2 < j1:
                    continue
                val = orbit_inner(gens[j1], v1, gens[j2], v2, beyond=k)
                if val:
                    entries[(a, b)] = val
                    if a != b:
                        entries[(b, a)] = sc.conj(val)
    trace = sc.exact_sum([entries.get((i, i), 0) for i in range(len(tails))], backend)
    blocks = _blocks(entries, backend)
    return OrbitGram(n_orbits, trace, blocks)


_WORD_CACHE: dict = {}


def _words_of_length(n: int, length: int):
    key = (n, length)
    if key not in _WORD_CACHE:
        import itertools

        _WORD_CACHE[key] = list(itertools.product(range(1, n + 1), repeat=length))
    return _WORD_CACHE[key]


def _blocks(entries: dict, backend: str) -> list:
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b) in entries:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups: dict = {}
    for (a, _) in entries:
        groups.setdefault(find(a), set()).add(a)
    out = []
    for members in groups.values():
        order = sorted(members)
        pos = {x: i for i, x in enumerate(order)}
        if backend == sc.EXACT:
            rows: dict = {}
            for (a, b), v in entries.items():
                if a in pos and b in pos:
                    rows.setdefault(pos[a], {})[pos[b]] = v
            out.append(la.ExactMatrix((len(order), len(order)), rows))
        else:
            m = np.zeros((len(order), len(order)), dtype=complex)
            for (a, b), v in entries.items():
                if a in pos and b in pos:
                    m[pos[a], pos[b]] = complex(v)
            out.append(m.real if not np.any(m.imag) else m)
    return out


def _compression_level(A: Compression, k: int, tol: float):
    total = A.alpha * words_below(A.n, k)
    if A.orientation != COMPLEMENT:
        norms = sc.exact_sum([generator_norm_sq(g) for g in A.generators], A.backend)
        return norms * words_below(A.n, k), A.m * words_below(A.n, k)
    if not A.generators:
        return sc.convert(total, A.backend), total
    E = orbit_gram(A.n, A.generators, k, A.backend)
    trace = total - E.n_orbits + E.trace
    rank = total - E.n_orbits + E.rank(A.backend, tol)
    return sc.simplify(trace) if A.backend == sc.EXACT else float(np.real(trace)), rank


def compression_trace_by_coefficients(A: Compression, k: int):
    """Second route for complement compressions: ``alpha N_k - tr(Q_k P_N)``."""
    total = A.alpha * words_below(A.n, k)
    return sc.exact_sum([total, -subspace_trace(A.n, A.generators, k, A.backend)], A.backend)


# ------------------------------------------------------------ dense oracle


@dataclass(frozen=True)
class DenseModel:
    """A dense tuple ``B`` whose level-``k`` defect is ``D_k(A) (+) I_offset`` for ``k <= depth``."""

    tuple: DenseTuple
    offset: int
    depth: int


def dense_truncation(A: RowContraction, depth: int) -> DenseModel:
    """Finite dense model of ``A`` valid for levels ``k <= depth``.

    Each model compresses ``A`` to a finite ``A^*``-invariant subspace that
    contains the range of every defect up to level ``depth``; compressions of
    the complement kind are realised on ``ran Q_m`` as ``P_K L P_K`` which adds
    an identity block of known size to every defect.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if isinstance(A, DenseTuple):
        return DenseModel(A, 0, depth)
    if isinstance(A, LeftRegular):
        return DenseModel(_shift_truncation(A.n, A.alpha, depth, A.backend), 0, depth)
    if isinstance(A, DecayingAtomic):
        return DenseModel(_atomic_truncation(A, depth), 0, depth)
    if isinstance(A, Compression):
        if A.orientation == COMPLEMENT:
            return _complement_truncation(A, depth)
        return DenseModel(_span_truncation(A, depth), 0, depth)
    if isinstance(A, DirectSum):
        a = dense_truncation(A.first, depth)
        b = dense_truncation(A.second, depth)
        mats = tuple(la.block_diag(x, y) for x, y in zip(a.tuple.matrices, b.tuple.matrices))
        return DenseModel(DenseTuple(mats, A.backend), a.offset + b.offset, depth)
    if isinstance(A, UnitaryMix):
        base = dense_truncation(A.base, depth)
        mats = tuple(_mix(base.tuple.matrices, A.U, j, A.backend) for j in range(A.n))
        return DenseModel(DenseTuple(mats, A.backend), base.offset, depth)
    raise TypeError(f"unsupported representation {type(A).__name__}")


def _from_entries(size: int, entries: dict, backend: str):
    if backend == sc.EXACT:
        rows: dict = {}
        for (r, c), v in entries.items():
            rows.setdefault(r, {})[c] = v
        return la.ExactMatrix((size, size), rows)
    m = np.zeros((size, size), dtype=complex)
    for (r, c), v in entries.items():
        m[r, c] = complex(v)
    return m.real if not np.any(m.imag) else m


def _shift_matrices(n: int, alpha: int, depth: int, backend: str):
    basis = TruncatedBasis(n, depth, alpha)
    one = sc.one(backend)
    mats = []
    for i in range(1, n + 1):
        entries = {}
        for col, (c, w) in enumerate(basis.labels()):
            if len(w) + 1 < depth:
                entries[(basis.index(c, (i,) + w), col)] = one
        mats.append(_from_entries(len(basis), entries, backend))
    return basis, mats


def _shift_truncation(n: int, alpha: int, depth: int, backend: str) -> DenseTuple:
    _, mats = _shift_matrices(n, alpha, depth, backend)
    return DenseTuple(tuple(mats), backend)


def _atomic_truncation(A: DecayingAtomic, depth: int) -> DenseTuple:
    if A.lam is None:
        raise ValueError("dense model of an atomic tuple needs lambda (give lam, or r with rational square roots)")
    labels = [(s, w) for s in range(A.d) for w in iter_words_below(A.n, depth) if A.is_basis(s, w)]
    index = {key: i for i, key in enumerate(labels)}
    mats = []
    for i in range(1, A.n + 1):
        entries = {}
        for col, (s, w) in enumerate(labels):
            if w:
                key, c = (s, (i,) + w), sc.one(A.backend)
            elif i == A.u[s]:
                key, c = ((s + 1) % A.d, EMPTY), A.lam[s]
            else:
                key, c = (s, (i,)), sc.one(A.backend)
            row = index.get(key)
            if row is not None and c:
                entries[(row, col)] = c
        mats.append(_from_entries(len(labels), entries, A.backend))
    return DenseTuple(tuple(mats), A.backend)


def _span_truncation(A: Compression, depth: int) -> DenseTuple:
    orbits = [(v, j) for j in range(A.m) for v in iter_words_below(A.n, depth)]
    index = {key: i for i, key in enumerate(orbits)}
    mats = []
    for i in range(1, A.n + 1):
        entries = {}
        for col, (v, j) in enumerate(orbits):
            image = A.generators[j].shift((i,) + v)
            target = (i,) + v
            # only orbits with comparable prefixes can meet the image
            candidates = [target[:t] for t in range(len(target) + 1)]
            candidates += [w for w in iter_words_below(A.n, depth) if w[: len(target)] == target and len(w) > len(target)]
            for w in candidates:
                for j2 in range(A.m):
                    row = index.get((w, j2))
                    if row is None:
                        continue
                    val = generator_inner(image, A.generators[j2].shift(w))
                    if val:
                        entries[(row, col)] = val
        mats.append(_from_entries(len(orbits), entries, A.backend))
    return DenseTuple(tuple(mats), A.backend)


def _complement_truncation(A: Compression, depth: int) -> DenseModel:
    if not A.is_finite():
        raise ValueError("dense model of a compression needs finitely supported generators")
    dmax = max((int(g.max_degree()) for g in A.generators), default=0)
    m = depth + dmax
    basis, shifts = _shift_matrices(A.n, A.alpha, m, A.backend)
    size = len(basis)
    # unnormalised Gram-Schmidt of the truncated orbit vectors Q_m L_v zeta_j
    us: list = []
    owners: dict = {}
    for j, g in enumerate(A.generators):
        for v in iter_words_below(A.n, m - g.min_degree()):
            vec = g.shift(v).truncated(m)
            y = {basis.index(c, w): vec[(c, w)] for (c, w) in vec.support()}
            touched = sorted({t for idx in y for t in owners.get(idx, ())})
            for t in touched:
                u, nu = us[t]
                coef = _sparse_inner(y, u, A.backend) / nu
                if coef:
                    for idx, val in u.items():
                        y[idx] = y.get(idx, 0) - coef * val
                    y = {i2: v2 for i2, v2 in y.items() if not _negligible(v2, A.backend)}
            if y:
                nu = _sparse_inner(y, y, A.backend)
                us.append((y, nu))
                for idx in y:
                    owners.setdefault(idx, []).append(len(us) - 1)
    proj: dict = {}
    for u, nu in us:
        for a, x in u.items():
            for b, y in u.items():
                proj[(a, b)] = proj.get((a, b), 0) + x * sc.conj(y) / nu
    P_perp = _from_entries(size, proj, A.backend)
    P_K = la.identity(size, A.backend) - P_perp
    mats = tuple(la.matmul(la.matmul(P_K, s), P_K) for s in shifts)
    return DenseModel(DenseTuple(mats, A.backend), len(us), depth)


def _sparse_inner(x: dict, y: dict, backend: str):
    keys = sorted(set(x) & set(y))
    return sc.exact_sum([x[i] * sc.conj(y[i]) for i in keys], backend)


def _negligible(v, backend: str) -> bool:
    return v == 0 if backend == sc.EXACT else abs(v) < 1e-14


# -------------------------------------------------------------- public API


@dataclass(frozen=True)
class DefectRecord:
    k: int
    trace: object
    rank: int


@dataclass(frozen=True)
class DefectSequence:
    n: int
    records: tuple
    backend: str
    tol: float

    @property
    def traces(self) -> list:
        return [r.trace for r in self.records]

    @property
    def ranks(self) -> list:
        return [r.rank for r in self.records]

    @property
    def k_max(self) -> int:
        return self.records[-1].k if self.records else 0


def _levels(A: RowContraction, k_max: int, tol: float, cap: int | None):
    """``[(trace, rank)]`` for levels ``1..k_max``."""
    check_cap(A, k_max, cap)
    if isinstance(A, DenseTuple):
        return [_matrix_trace_rank(D, A.backend, tol) for _, D in dense_defects(A, k_max)]
    if isinstance(A, LeftRegular):
        out = []
        for k in range(1, k_max + 1):
            c = A.alpha * words_below(A.n, k)
            out.append((sc.convert(c, A.backend), c))
        return out
    if isinstance(A, DecayingAtomic):
        return [_atomic_level(A, k, tol) for k in range(1, k_max + 1)]
    if isinstance(A, Compression):
        return [_compression_level(A, k, tol) for k in range(1, k_max + 1)]
    if isinstance(A, DirectSum):
        a = _levels(A.first, k_max, tol, cap)
        b = _levels(A.second, k_max, tol, cap)
        return [(sc.exact_sum([x[0], y[0]], A.backend), x[1] + y[1]) for x, y in zip(a, b)]
    if isinstance(A, UnitaryMix):
        return dense_levels(A, k_max, tol)
    raise TypeError(f"unsupported representation {type(A).__name__}")


def dense_levels(A: RowContraction, k_max: int, tol: float = la.DEFAULT_RANK_TOL, depth: int | None = None):
    """Levels computed on :func:`dense_truncation` (the brute-force oracle)."""
    model = dense_truncation(A, depth or k_max)
    out = []
    for _, D in dense_defects(model.tuple, k_max):
        tr, rk = _matrix_trace_rank(D, A.backend, tol)
        out.append((sc.exact_sum([tr, -model.offset], A.backend), rk - model.offset))
    return out


def defect_trace(A: RowContraction, k: int, cap: int | None = None):
    """``tr(I - Phi_A^k(I))``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return _single(A, k, la.DEFAULT_RANK_TOL, cap)[0]


def defect_rank(A: RowContraction, k: int, tol: float = la.DEFAULT_RANK_TOL, cap: int | None = None) -> int:
    """``rk(I - Phi_A^k(I))``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return _single(A, k, tol, cap)[1]


def _single(A: RowContraction, k: int, tol: float, cap: int | None):
    check_cap(A, k, cap)
    if isinstance(A, LeftRegular):
        c = A.alpha * words_below(A.n, k)
        return sc.convert(c, A.backend), c
    if isinstance(A, DecayingAtomic):
        return _atomic_level(A, k, tol)
    if isinstance(A, Compression):
        return _compression_level(A, k, tol)
    if isinstance(A, DirectSum):
        a, b = _single(A.first, k, tol, cap), _single(A.second, k, tol, cap)
        return sc.exact_sum([a[0], b[0]], A.backend), a[1] + b[1]
    return _levels(A, k, tol, cap)[-1]


def defect_sequence(A: RowContraction, k_max: int, tol: float = la.DEFAULT_RANK_TOL, cap: int | None = None) -> DefectSequence:
    """Levels ``1..k_max``; the traces are checked to be non-decreasing."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    levels = _levels(A, k_max, tol, cap)
    slack = 0 if A.backend == sc.EXACT else 1e-9 * max(1.0, float(np.real(levels[-1][0])))
    for k in range(1, len(levels)):
        if levels[k][0] < levels[k - 1][0] - slack:
            raise ArithmeticError(f"defect trace decreased between levels {k} and {k + 1}")
    records = tuple(DefectRecord(k + 1, tr, rk) for k, (tr, rk) in enumerate(levels))
    return DefectSequence(A.n, records, A.backend, tol)


def pure_rank(A: RowContraction, tol: float = la.DEFAULT_RANK_TOL, cap: int | None = None) -> int:
    """``rk(I - sum_i A_i A_i^*)``."""
    return defect_rank(A, 1, tol, cap)


def purity_indicator(A: RowContraction, k: int, cap: int | None = None):
    """``max <Phi^k(I) x, x>`` over a fixed probe set of unit vectors.

    Probe sets: standard basis (dense); ``xi_w, |w| < k`` (left regular);
    ring vectors ``xi[s, e]`` (atomic); normalised ``P_M xi_w, |w| <= 1``
    (complement compressions); the generators (span compressions). Mixing by
    a unitary leaves ``Phi`` unchanged, so a mix reports its base tuple.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if isinstance(A, DenseTuple):
        check_cap(A, k, cap)
        X = la.identity(A.dim, A.backend)
        for _ in range(k):
            X = phi_apply(A, X)
        diag = X.diagonal() if la.is_exact_matrix(X) else np.real(np.diagonal(X)).tolist()
        return max(diag, default=sc.zero(A.backend))
    if isinstance(A, LeftRegular):
        return sc.zero(A.backend)
    if isinstance(A, DecayingAtomic):
        best = sc.zero(A.backend)
        for s in range(A.d):
            prod = sc.one(A.backend)
            for t in range(1, k + 1):
                prod = prod * A.r[(s - t) % A.d]
            best = max(best, prod)
        return best
    if isinstance(A, Compression):
        if A.orientation != COMPLEMENT:
            return sc.zero(A.backend)
        best = sc.zero(A.backend)
        for w in iter_words_below(A.n, 2):
            for c in range(A.alpha):
                x = _project_complement(A, c, w)
                nrm = generator_norm_sq(x)
                if nrm:
                    best = max(best, generator_norm_sq(x.tail(k)) / nrm)
        return best
    if isinstance(A, DirectSum):
        return max(purity_indicator(A.first, k, cap), purity_indicator(A.second, k, cap))
    if isinstance(A, UnitaryMix):
        return purity_indicator(A.base, k, cap)
    raise TypeError(f"unsupported representation {type(A).__name__}")


def _project_complement(A: Compression, copy: int, w) -> Generator:
    """``P_M xi_w = xi_w - sum <xi_w, L_v zeta_j> L_v zeta_j``."""
    x = Generator(A.n, A.alpha, A.backend, {(copy, tuple(w)): sc.one(A.backend)})
    for j, g in enumerate(A.generators):
        for t in range(len(w) + 1):
            v = tuple(w[:t])
            c = sc.conj(g.coefficient(copy, tuple(w[t:])))
            if c:
                x = x - g.shift(v).scale(c)
    return x


__all__ = [
    "DEFAULT_BASIS_CAP",
    "ResourceLimitError",
    "basis_cap",
    "words_below",
    "check_cap",
    "phi_apply",
    "dense_defects",
    "atomic_diagonal",
    "subspace_trace",
    "orbit_gram",
    "compression_trace_by_coefficients",
    "DenseModel",
    "dense_truncation",
    "dense_levels",
    "DefectRecord",
    "DefectSequence",
    "defect_trace",
    "defect_rank",
    "defect_sequence",
    "pure_rank",
    "purity_indicator",
]
