"""Curvature, Euler characteristic and related estimates from defect sequences.

For a pure-rank-``p`` tuple the normalised traces ``a_k = tr(D_k)/n^k``
satisfy ``a_{k+1} <= a_k + p/n^{k+1}``, so the limit is at most
``a_k + p/(n^k (n - 1))``. Estimates therefore carry a one-sided bracket

    value = (n - 1) tr(D_k) / n^k   <=   K   <=   value + p / n^k,

and the same with ranks for the Euler characteristic. Nothing is claimed
about the rate from below; the Cauchy gap between consecutive values is
reported as a diagnostic only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence


from . import linalg as la
from . import scalars as sc
from .cpmap import (
    DefectSequence,
    defect_sequence,
    purity_indicator,
    subspace_trace,
    words_below,
)
from .operators import RowContraction

DEFAULT_GAP = 1e-6
DEFAULT_PURITY_THRESHOLD = 0.5
FLOAT_EPS = 1e-9

FREE_CONSISTENT = "free-consistent"
NOT_FREE = "not-free"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class InvariantEstimate:
    value: object
    upper_bound: object
    k_used: int
    cauchy_gap: object
    converged: bool
    levels: tuple = ()
    lower_bound: object = None
    aitken: float | None = None

    def brackets(self, x, eps=0) -> bool:
        # int 0 keeps exact bounds exact
        lo = self.value if self.lower_bound is None else self.lower_bound
        return lo - eps <= x <= self.upper_bound + eps


def normalized(values: Sequence, n: int, backend: str) -> list:
    """``(n - 1) q_k / n^k`` for ``q_1, q_2, ...``."""
    out = []
    for k, q in enumerate(values, start=1):
        if backend == sc.EXACT:
            out.append(sc.simplify((n - 1) * sc.convert(q, sc.EXACT) / n**k))
        else:
            out.append((n - 1) * float(q) / float(n) ** k)
    return out


def aitken(values: Sequence) -> float | None:
    """Aitken delta-squared extrapolation of the last three values (float)."""
    if len(values) < 3:
        return None
    x0, x1, x2 = (float(v) for v in values[-3:])
    den = (x2 - x1) - (x1 - x0)
    if den == 0 or not math.isfinite(den):
        return None
    return x2 - (x2 - x1) ** 2 / den


def estimate(values: Sequence, n: int, backend: str, pure_rank, gap: float = DEFAULT_GAP) -> InvariantEstimate:
    """Estimate from level quantities ``q_1..q_k`` (traces or ranks)."""
    if not values:
        raise ValueError("need at least one level")
    levels = normalized(values, n, backend)
    k = len(levels)
    value = levels[-1]
    if pure_rank is None or pure_rank == math.inf:
        upper = math.inf
    elif backend == sc.EXACT:
        upper = sc.simplify(value + sc.convert(pure_rank, sc.EXACT) / n**k)
    else:
        upper = value + float(pure_rank) / float(n) ** k
    cauchy = abs(levels[-1] - levels[-2]) if k >= 2 else math.inf
    converged = bool(k >= 2 and float(cauchy) < gap)
    return InvariantEstimate(value, upper, k, cauchy, converged, tuple(levels), None, aitken(levels))


def curvature_from(seq: DefectSequence, gap: float = DEFAULT_GAP) -> InvariantEstimate:
    return estimate(seq.traces, seq.n, seq.backend, seq.records[0].rank, gap)


def euler_from(seq: DefectSequence, gap: float = DEFAULT_GAP) -> InvariantEstimate:
    return estimate(seq.ranks, seq.n, seq.backend, seq.records[0].rank, gap)


def pure_rank(A: RowContraction, tol: float = la.DEFAULT_RANK_TOL, cap: int | None = None) -> int:
    """``rk(I - sum_i A_i A_i^*)``."""
    return defect_sequence(A, 1, tol, cap).records[0].rank


def curvature(A: RowContraction, k_max: int, tol: float = la.DEFAULT_RANK_TOL, gap: float = DEFAULT_GAP, cap: int | None = None) -> InvariantEstimate:
    return curvature_from(defect_sequence(A, k_max, tol, cap), gap)


def euler(A: RowContraction, k_max: int, tol: float = la.DEFAULT_RANK_TOL, gap: float = DEFAULT_GAP, cap: int | None = None) -> InvariantEstimate:
    return euler_from(defect_sequence(A, k_max, tol, cap), gap)


def tilde_sequence(n: int, generators, k_max: int, backend: str) -> list:
    """``tr(P_N Q_k P_N)`` for ``k = 1..k_max``, ``N`` generated by ``generators``."""
    return [subspace_trace(n, generators, k, backend) for k in range(1, k_max + 1)]


def tilde_curvature(n: int, generators, k_max: int, alpha: int = 1, backend: str | None = None, gap: float = DEFAULT_GAP) -> InvariantEstimate:
    """Normalised ``tr(P_N Q_k P_N)`` for an invariant subspace ``N``.

    For invariant ``N`` the traces satisfy ``t_{k+1} >= t_1 + n t_k``, so the
    normalised sequence is non-decreasing and each level value is a lower
    bound. With ``t_k = sum_j sum_x |zeta_j(x)|^2 N_{k - |x|}`` each unit
    generator contributes at most ``n^{-k}`` to the remaining gap, so the
    upper bound is ``value + m/n^k`` for ``m`` generators (capped by ``alpha``).
    """
    gens = list(generators)
    if backend is None:
        backend = gens[0].backend if gens else sc.EXACT
    traces = tilde_sequence(n, gens, k_max, backend)
    levels = normalized(traces, n, backend)
    slack = 0 if backend == sc.EXACT else FLOAT_EPS
    for a, b in zip(levels, levels[1:]):
        if b < a - slack:
            raise ArithmeticError("normalised invariant-subspace traces decreased")
    value = levels[-1]
    cauchy = abs(levels[-1] - levels[-2]) if len(levels) >= 2 else math.inf
    if backend == sc.EXACT:
        upper = min(value + sc.convert(len(gens), backend) / n**k_max, sc.convert(alpha, backend))
    else:
        upper = min(value + len(gens) / float(n) ** k_max, float(alpha))
    return InvariantEstimate(
        value,
        upper,
        k_max,
        cauchy,
        bool(len(levels) >= 2 and float(cauchy) < gap),
        tuple(levels),
        value,
        aitken(levels),
    )


@dataclass(frozen=True)
class InvariantReport:
    curvature: InvariantEstimate
    euler: InvariantEstimate
    pure_rank: int
    hierarchy_ok: bool
    levelwise_ok: bool
    sequence: DefectSequence = field(repr=False)


def _eps(backend: str, scale: float = 1.0):
    # exact zero: adding 0.0 would coerce a Fraction to float
    return 0 if backend == sc.EXACT else FLOAT_EPS * max(1.0, scale)


def hierarchy_report(A: RowContraction, k_max: int, tol: float = la.DEFAULT_RANK_TOL, gap: float = DEFAULT_GAP, cap: int | None = None) -> InvariantReport:
    seq = defect_sequence(A, k_max, tol, cap)
    return report_from(seq, gap)


def report_from(seq: DefectSequence, gap: float = DEFAULT_GAP) -> InvariantReport:
    K = curvature_from(seq, gap)
    chi = euler_from(seq, gap)
    p = seq.records[0].rank
    eps = _eps(seq.backend, p)
    hierarchy = bool(-eps <= K.value <= chi.value + eps and chi.value <= p + eps)
    levelwise = all(
        -eps <= K.levels[i] <= chi.levels[i] + eps and chi.levels[i] <= p + eps for i in range(len(K.levels))
    )
    levelwise = levelwise and all(r.trace <= r.rank + _eps(seq.backend, r.rank) for r in seq.records)
    return InvariantReport(K, chi, p, hierarchy, bool(levelwise), seq)


@dataclass(frozen=True)
class FreenessVerdict:
    verdict: str
    pure_rank: int
    non_pure: bool
    purity: float
    curvature: InvariantEstimate
    reason: str


def freeness_test(
    A: RowContraction,
    k_max: int,
    tol: float = la.DEFAULT_RANK_TOL,
    gap_threshold: float = DEFAULT_GAP,
    purity_threshold: float = DEFAULT_PURITY_THRESHOLD,
    cap: int | None = None,
) -> FreenessVerdict:
    """Compare the curvature with the pure rank.

    * ``free-consistent``: every level trace equals ``p N_k`` (the left
      regular signature), exactly in the exact backend.
    * ``not-free``: the upper bound on ``K`` is below ``p`` by more than ``tol``.
    * ``inconclusive``: anything else, including non-pure or zero inputs.
    """
    seq = defect_sequence(A, k_max, tol, cap)
    K = curvature_from(seq, gap_threshold)
    p = seq.records[0].rank
    purity = float(purity_indicator(A, k_max, cap))
    non_pure = purity > purity_threshold
    if non_pure:
        return FreenessVerdict(INCONCLUSIVE, p, True, purity, K, f"purity indicator {purity:.3g} above {purity_threshold}")
    if p == 0:
        return FreenessVerdict(INCONCLUSIVE, p, False, purity, K, "pure rank is zero")
    signature = True
    for r in seq.records:
        target = p * words_below(seq.n, r.k)
        if seq.backend == sc.EXACT:
            signature = signature and r.trace == target
        else:
            signature = signature and abs(float(r.trace) - target) <= tol * max(1.0, target)
    if signature:
        return FreenessVerdict(FREE_CONSISTENT, p, False, purity, K, "level traces equal p (n^k - 1)/(n - 1) at every level")
    if float(K.upper_bound) < p - tol:
        return FreenessVerdict(NOT_FREE, p, False, purity, K, f"K <= {float(K.upper_bound):.6g} < pure rank {p}")
    return FreenessVerdict(INCONCLUSIVE, p, False, purity, K, "bound does not separate K from the pure rank")


__all__ = [
    "DEFAULT_GAP",
    "InvariantEstimate",
    "InvariantReport",
    "FreenessVerdict",
    "FREE_CONSISTENT",
    "NOT_FREE",
    "INCONCLUSIVE",
    "normalized",
    "aitken",
    "estimate",
    "curvature_from",
    "euler_from",
    "pure_rank",
    "curvature",
    "euler",
    "tilde_sequence",
    "tilde_curvature",
    "hierarchy_report",
    "report_from",
    "freeness_test",
]
