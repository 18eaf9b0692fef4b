"""Matrix plumbing for both backends.

Exact matrices are sparse (row -> {col: value}) over Fraction/GaussQ; the
operators we meet (shifts, defects, Gram blocks) are very sparse. Float
matrices are plain numpy arrays.

Exact rank uses fraction-free (Bareiss) elimination on integer-cleared rows,
applied per connected component of the nonzero pattern.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import scalars as sc
from .scalars import GaussQ

DEFAULT_RANK_TOL = 1e-9


class ExactMatrix:
    """Immutable sparse square-or-rectangular matrix with exact entries."""

    __slots__ = ("shape", "rows")

    def __init__(self, shape: tuple[int, int], rows: dict | None = None):
        self.shape = (int(shape[0]), int(shape[1]))
        clean = {}
        for i, row in (rows or {}).items():
            r = {j: sc.simplify(v) for j, v in row.items() if v}
            if r:
                clean[i] = r
        self.rows = clean

    @classmethod
    def identity(cls, d: int) -> "ExactMatrix":
        return cls((d, d), {i: {i: Fraction(1)} for i in range(d)})

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> "ExactMatrix":
        return cls((r, r if c is None else c), {})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "ExactMatrix":
        data = [list(row) for row in data]
        ncols = len(data[0]) if data else 0
        rows = {}
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                v = sc.convert(v, sc.EXACT)
                if v:
                    rows.setdefault(i, {})[j] = v
        return cls((len(data), ncols), rows)

    def to_dense(self) -> list[list]:
        out = [[Fraction(0)] * self.shape[1] for _ in range(self.shape[0])]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, Fraction(0))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = {}
        orows = other.rows
        for i, row in self.rows.items():
            acc: dict = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    acc[j] = acc.get(j, 0) + a * b
            if acc:
                out[i] = acc
        return ExactMatrix((self.shape[0], other.shape[1]), out)

    def _combine(self, other: "ExactMatrix", sign: int) -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = {i: dict(r) for i, r in self.rows.items()}
        for i, row in other.rows.items():
            acc = out.setdefault(i, {})
            for j, v in row.items():
                acc[j] = acc.get(j, 0) + (v if sign > 0 else -v)
        return ExactMatrix(self.shape, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix(self.shape, {i: {j: v * c for j, v in r.items()} for i, r in self.rows.items()})

    def H(self) -> "ExactMatrix":
        """Conjugate transpose."""
        out: dict = {}
        for i, row in self.rows.items():
            for j, v in row.items():
                out.setdefault(j, {})[i] = sc.conj(v)
        return ExactMatrix((self.shape[1], self.shape[0]), out)

    def trace(self):
        return sc.exact_sum((self.rows.get(i, {}).get(i, 0) for i in range(min(self.shape))), sc.EXACT)

    def diagonal(self) -> list:
        return [self[i, i] for i in range(min(self.shape))]

    def is_diagonal(self) -> bool:
        return all(set(r) <= {i} for i, r in self.rows.items())

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(sorted((i, tuple(sorted(r.items()))) for i, r in self.rows.items()))))

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def __repr__(self):
        return f"ExactMatrix(shape={self.shape}, nnz={self.nnz()})"


# ---------------------------------------------------------------- dispatch

def is_exact_matrix(m) -> bool:
    return isinstance(m, ExactMatrix)


def identity(d: int, backend: str):
    return ExactMatrix.identity(d) if backend == sc.EXACT else np.eye(d)


def adjoint(m):
    return m.H() if isinstance(m, ExactMatrix) else m.conj().T


def matmul(a, b):
    if isinstance(a, ExactMatrix) != isinstance(b, ExactMatrix):
        raise sc.BackendError("cannot multiply exact and float matrices")
    return a @ b


def trace(m):
    if isinstance(m, ExactMatrix):
        return m.trace()
    d = np.diagonal(m)
    if np.iscomplexobj(d):
        return complex(math.fsum(d.real), math.fsum(d.imag))
    return math.fsum(d.tolist())


def shape(m) -> tuple[int, int]:
    return m.shape


def to_numpy(m) -> np.ndarray:
    if isinstance(m, ExactMatrix):
        dense = m.to_dense()
        if any(isinstance(v, GaussQ) for row in dense for v in row):
            return np.array([[complex(sc.to_float(v)) for v in row] for row in dense], dtype=complex)
        return np.array([[float(v) for v in row] for row in dense], dtype=float).reshape(m.shape)
    return np.asarray(m)


def block_diag(a, b):
    """Block-diagonal sum of two matrices of one backend."""
    if isinstance(a, ExactMatrix):
        ra, ca = a.shape
        rows = {i: dict(r) for i, r in a.rows.items()}
        for i, r in b.rows.items():
            rows[ra + i] = {ca + j: v for j, v in r.items()}
        return ExactMatrix((ra + b.shape[0], ca + b.shape[1]), rows)
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.result_type(a, b))
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out


# ---------------------------------------------------------------- exact rank

def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _clear_row(row: dict) -> dict:
    """Scale a row by a positive integer so every entry is a (Gaussian) integer."""
    den = 1
    for v in row.values():
        if isinstance(v, GaussQ):
            den = _lcm(den, _lcm(v.re.denominator, v.im.denominator))
        else:
            den = _lcm(den, Fraction(v).denominator)
    out = {}
    for j, v in row.items():
        if isinstance(v, GaussQ):
            out[j] = GaussQ(v.re * den, v.im * den)
        else:
            out[j] = int(Fraction(v) * den)
    return out


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, rem = divmod(a, b)
        if rem:
            raise ArithmeticError("Bareiss division was not exact")
        return q
    return a / b


def bareiss_rank(rows: Iterable[dict]) -> int:
    """Rank of a sparse exact matrix by fraction-free (Bareiss) elimination.

    ``rows`` are dicts ``col -> value``. Rows are first cleared to (Gaussian)
    integers; every elimination step divides exactly by the previous pivot.
    """
    work = [_clear_row(r) for r in rows if r]
    if not work:
        return 0
    cols = sorted({j for r in work for j in r})
    prev = 1
    rank = 0
    remaining = work
    for col in cols:
        pivot_idx = next((i for i, r in enumerate(remaining) if r.get(col)), None)
        if pivot_idx is None:
            continue
        piv_row = remaining.pop(pivot_idx)
        piv = piv_row[col]
        new_remaining = []
        for r in remaining:
            a = r.get(col, 0)
            out = {}
            keys = set(r) | set(piv_row)
            for j in keys:
                if j == col:
                    continue
                val = piv * r.get(j, 0) - a * piv_row.get(j, 0)
                if val:
                    out[j] = _exact_div(val, prev)
            if out:
                new_remaining.append(out)
        remaining = new_remaining
        prev = piv
        rank += 1
        if not remaining:
            break
    return rank


def _components(m: ExactMatrix) -> list[list[int]]:
    """Row groups of connected components of the bipartite nonzero pattern."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, row in m.rows.items():
        ri = find(("r", i))
        for j in row:
            cj = find(("c", j))
            if ri != cj:
                parent[cj] = ri
    groups: dict = {}
    for i in m.rows:
        groups.setdefault(find(("r", i)), []).append(i)
    return [sorted(g) for g in groups.values()]


def exact_rank(m: ExactMatrix) -> int:
    if m.is_diagonal():
        return len(m.rows)
    return sum(bareiss_rank([m.rows[i] for i in group]) for group in _components(m))


def exact_rank_dense(rows: Sequence[Sequence]) -> int:
    return exact_rank(ExactMatrix.from_dense(rows)) if rows else 0


# ---------------------------------------------------------------- float rank

def hermitian_rank(m: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> int:
    """Count eigenvalues above ``tol * max(1, largest)`` of a Hermitian matrix."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    h = (m + m.conj().T) / 2
    ev = np.linalg.eigvalsh(h)
    top = max(1.0, float(np.max(np.abs(ev))))
    return int(np.count_nonzero(ev > tol * top))


def rank(m, tol: float = DEFAULT_RANK_TOL, hermitian: bool = True) -> int:
    if isinstance(m, ExactMatrix):
        return exact_rank(m)
    m = np.asarray(m)
    if m.size == 0:
        return 0
    if hermitian:
        return hermitian_rank(m, tol)
    sv = np.linalg.svd(m, compute_uv=False)
    top = max(1.0, float(sv[0]))
    return int(np.count_nonzero(sv > tol * top))


def max_eigenvalue_hermitian(m) -> float:
    a = to_numpy(m)
    if a.size == 0:
        return 0.0
    return float(np.max(np.linalg.eigvalsh((a + a.conj().T) / 2)))


def exact_is_psd(m: ExactMatrix) -> bool:
    """Exact PSD test of a Hermitian matrix by pivoted LDL^H elimination.

    Once no nonzero diagonal pivot remains, a PSD matrix must have a zero
    remaining block.
    """
    n = m.shape[0]
    a = [dict(m.rows.get(i, {})) for i in range(n)]
    active = set(range(n))
    while active:
        pivot = next((i for i in sorted(active) if a[i].get(i, 0) != 0), None)
        if pivot is None:
            return all(not a[i].get(j, 0) for i in active for j in active)
        d = sc.simplify(a[pivot][pivot])
        if isinstance(d, GaussQ):
            raise ValueError("matrix is not Hermitian (complex diagonal)")
        if d < 0:
            return False
        active.discard(pivot)
        row = {j: v for j, v in a[pivot].items() if j in active and v}
        for i in active:
            ci = a[i].pop(pivot, 0)
            if not ci:
                continue
            for j, v in row.items():
                a[i][j] = a[i].get(j, 0) - ci * v / d
    return True


def exact_inverse(m: ExactMatrix) -> ExactMatrix:
    """Gauss-Jordan inverse over the rationals (or Gaussian rationals)."""
    d = m.shape[0]
    if m.shape != (d, d):
        raise ValueError("inverse needs a square matrix")
    a = [[m[i, j] for j in range(d)] + [Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(d):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return ExactMatrix.from_dense([row[d:] for row in a])
