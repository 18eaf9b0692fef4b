"""Verification suites: closed forms, the invariant hierarchy, and path agreement.

Every suite returns a list of :class:`Check` rows; a suite passes when every
row passes.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import catalog
from . import cpmap
from . import invariants as inv
from . import scalars as sc
from .config import RunConfig
from .fock import FockVector
from .operators import (
    COMPLEMENT,
    Compression,
    DenseTuple,
    direct_sum,
    random_contraction,
    random_unitary,
    unitary_mix,
)

SUITES = ("paper", "hierarchy", "oracle")

# levels used per alphabet size in the closed-form suite
MAX_LEVEL = {2: 14, 3: 9}
ORACLE_DEPTH = {2: 6, 3: 4}


@dataclass(frozen=True)
class Check:
    suite: str
    entry: str
    check: str
    expected: object
    computed: object
    delta: float
    tolerance: float
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("expected", "computed"):
            d[key] = _render(d[key])
        return d


def _render(v):
    if isinstance(v, (Fraction, int)) and not isinstance(v, bool):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_render(x) for x in v]
    if isinstance(v, (float, complex, np.floating)):
        return sc.format_scalar(v)
    return v


def _delta(a, b) -> float:
    try:
        return abs(float(a) - float(b))
    except (TypeError, ValueError):
        return 0.0 if a == b else math.inf


def _eq(a, b, backend: str, scale: float = 1.0) -> tuple[bool, float]:
    """Exact equality in the exact backend, relative ``1e-9`` in float."""
    if backend == sc.EXACT and not isinstance(a, float) and not isinstance(b, float):
        return a == b, 0.0
    return _delta(a, b) <= 1e-9 * max(1.0, abs(scale)), 1e-9 * max(1.0, abs(scale))


def _level_cap(cfg: RunConfig, n: int) -> int:
    return min(cfg.k_max, MAX_LEVEL.get(n, cfg.k_max))


def _entry_backend(entry: catalog.CatalogEntry, cfg: RunConfig) -> str:
    return cfg.backend if cfg.backend in entry.backends else entry.default_backend


# ----------------------------------------------------------------- catalog


def check_entry(entry: catalog.CatalogEntry, cfg: RunConfig) -> list[Check]:
    """Compare one catalog entry with its closed forms."""
    backend = _entry_backend(entry, cfg)
    k = _level_cap(cfg, entry.n)
    if entry.kind == catalog.SUBSPACE:
        return _check_subspace(entry, backend, k, cfg)
    A = entry.make(backend)
    seq = cpmap.defect_sequence(A, k, cfg.rank_tolerance, cfg.basis_cap)
    rep = inv.report_from(seq, cfg.convergence_gap)
    name = _label(entry)
    out = []
    p = rep.pure_rank
    if "pure_rank" in entry.expected:
        out.append(Check("paper", name, "pure_rank", entry.expected["pure_rank"], p, _delta(p, entry.expected["pure_rank"]), 0.0, p == entry.expected["pure_rank"]))
    eps = 0.0 if backend == sc.EXACT else 1e-9
    gap = entry.allowed_gap(k, p)
    for key, est in (("curvature", rep.curvature), ("euler", rep.euler)):
        if key not in entry.expected:
            continue
        want = entry.expected[key]
        d = _delta(est.value, want)
        if backend == sc.EXACT:
            ok = abs(est.value - want) <= gap and want <= est.upper_bound
        else:
            ok = d <= float(gap) + eps and float(want) <= float(est.upper_bound) + eps
        out.append(Check("paper", name, key, want, est.value, d, float(gap) + eps, ok, f"k={k}, upper bound {float(est.upper_bound):.12g}"))
    for key, fn in sorted(entry.level.items()):
        if key == "tilde_trace":
            continue
        values = seq.traces if key == "trace" else seq.ranks
        bad = []
        for lev, v in enumerate(values, start=1):
            if lev < entry.min_level:
                continue
            ok, _ = _eq(v, fn(lev), backend, float(fn(lev)))
            if not ok:
                bad.append((lev, v, fn(lev)))
        worst = max((_delta(v, w) for _, v, w in bad), default=0.0)
        out.append(Check("paper", name, f"{key}_k", entry.formulas.get(f"{key}_k", key), "all levels" if not bad else bad[:3], worst, eps, not bad, f"levels {entry.min_level}..{k}"))
    out.append(Check("paper", name, "hierarchy", True, rep.hierarchy_ok and rep.levelwise_ok, 0.0, eps, rep.hierarchy_ok and rep.levelwise_ok))
    if entry.expected.get("freeness"):
        verdict = inv.freeness_test(A, k, cfg.rank_tolerance, cfg.convergence_gap, cap=cfg.basis_cap)
        want = entry.expected["freeness"]
        out.append(Check("paper", name, "freeness", want, verdict.verdict, 0.0, 0.0, verdict.verdict == want, verdict.reason))
    if isinstance(A, Compression) and A.orientation == COMPLEMENT and ("tilde" in entry.expected or "tilde_partial" in entry.expected):
        out.extend(_check_tilde(entry, A.generators, backend, k, cfg, "tilde_partial" if "tilde_partial" in entry.expected else "tilde"))
    if entry.name == "shift_and_zero":
        out.extend(_check_shift_and_zero(entry, A))
    return out


def _label(entry: catalog.CatalogEntry) -> str:
    params = ",".join(f"{k}={_short(v)}" for k, v in entry.params.items())
    return f"{entry.name}({params})"


def _short(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return "[" + " ".join(str(_short(x)) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + " ".join(f"{a}:{b}" for a, b in v.items()) + "}"
    return str(v)


def _check_tilde(entry, gens, backend, k, cfg, key) -> list[Check]:
    est = inv.tilde_curvature(entry.n, gens, k, backend=backend, gap=cfg.convergence_gap)
    want = entry.expected[key]
    eps = 0.0 if backend == sc.EXACT else 1e-9
    if backend == sc.EXACT:
        ok = est.value <= want <= est.upper_bound
    else:
        ok = float(est.value) - eps <= float(want) <= float(est.upper_bound) + eps
    return [Check("paper", _label(entry), key, want, est.value, _delta(est.value, want), float(est.upper_bound - est.value) + eps, ok, f"k={k}, bracket [{float(est.value):.12g}, {float(est.upper_bound):.12g}]")]


def _check_subspace(entry, backend, k, cfg) -> list[Check]:
    gens = entry.make(backend)
    out = _check_tilde(entry, gens, backend, k, cfg, "tilde")
    fn = entry.level.get("tilde_trace")
    if fn is not None:
        traces = inv.tilde_sequence(entry.n, gens, k, backend)
        bad = [(lev, t, fn(lev)) for lev, t in enumerate(traces, start=1) if not _eq(t, fn(lev), backend, float(fn(lev)))[0]]
        out.append(Check("paper", _label(entry), "tilde_trace_k", entry.formulas.get("tilde_trace_k", "tilde_trace"), "all levels" if not bad else bad[:3], max((_delta(a, b) for _, a, b in bad), default=0.0), 0.0, not bad))
    return out


def _check_shift_and_zero(entry, A: Compression) -> list[Check]:
    m = entry.params["m"]
    words = catalog.monomial_domain_words(list(A.generators), 5)
    want = [tuple([1] * j) for j in range(5)]
    out = [Check("paper", _label(entry), "domain_depth5", want, words, 0.0, 0.0, words == want if m >= 4 else True)]
    zero = True
    for j in range(m):
        x = FockVector.basis(2, (1,) * j, backend=A.backend)
        zero = zero and A.apply(2, x).is_zero()
    out.append(Check("paper", _label(entry), "A2_vanishes", True, zero, 0.0, 0.0, zero, f"on xi_(1^j), j < {m}"))
    return out


def catalog_suite(cfg: RunConfig) -> list[Check]:
    out = []
    for entry in catalog.reference_entries():
        out.extend(check_entry(entry, cfg))
    return out


# --------------------------------------------------------------- hierarchy


def random_dense(rng: np.random.Generator, backend: str, max_dim: int = 8) -> DenseTuple:
    n = int(rng.integers(2, 4))
    dim = int(rng.integers(1, max_dim + 1))
    rank = None if rng.random() < 0.5 else int(rng.integers(1, dim + 1))
    return random_contraction(n, dim, rng, backend, rank)


def hierarchy_suite(cfg: RunConfig) -> list[Check]:
    """Random dense row contractions satisfy ``0 <= K <= chi <= pure rank``."""
    rng = np.random.default_rng(cfg.seed)
    k = min(cfg.k_max, 6)
    out = []
    for s in range(cfg.samples):
        A = random_dense(rng, cfg.backend)
        rep = inv.hierarchy_report(A, k, cfg.rank_tolerance, cfg.convergence_gap, cfg.basis_cap)
        ok = rep.hierarchy_ok and rep.levelwise_ok
        out.append(
            Check(
                "hierarchy",
                f"random[{s}](n={A.n},d={A.dim})",
                "0<=K<=chi<=p",
                True,
                [rep.curvature.value, rep.euler.value, rep.pure_rank],
                0.0,
                0.0,
                ok,
                f"k={k}",
            )
        )
    return out


# ------------------------------------------------------------------ oracle


def oracle_entries() -> list[catalog.CatalogEntry]:
    """Catalog tuples with an exact finite dense model."""
    out = []
    for e in catalog.reference_entries():
        if e.kind != catalog.TUPLE or sc.EXACT not in e.backends:
            continue
        try:
            A = e.make(sc.EXACT)
            cpmap.dense_truncation(A, 1)
        except (ValueError, TypeError):
            continue
        out.append(e)
    return out


def compare_paths(A, depth: int, tol: float = 1e-9) -> tuple[bool, list, list]:
    fast = cpmap._levels(A, depth, tol, None)
    slow = cpmap.dense_levels(A, depth, tol)
    return fast == slow, fast, slow


def oracle_suite(cfg: RunConfig) -> list[Check]:
    """Specialised paths against dense models, plus structural identities."""
    out = []
    for e in oracle_entries():
        A = e.make(sc.EXACT)
        depth = ORACLE_DEPTH.get(e.n, 4)
        ok, fast, slow = compare_paths(A, depth, cfg.rank_tolerance)
        out.append(Check("oracle", _label(e), "dense_equivalence", slow, fast, 0.0 if ok else math.inf, 0.0, ok, f"levels 1..{depth}"))
        if isinstance(A, Compression) and A.orientation == COMPLEMENT and A.alpha == 1:
            out.extend(_complement_identities(e, A, depth))
    rng = np.random.default_rng(cfg.seed)
    pairs = max(1, cfg.samples // 5)
    for s in range(pairs):
        out.extend(_random_pair_checks(rng, s))
    out.extend(_eigenvector_checks())
    return out


def _complement_identities(e, A: Compression, depth: int) -> list[Check]:
    ok_route = True
    ok_comp = True
    for k in range(1, depth + 1):
        tr = cpmap.defect_trace(A, k)
        ok_route = ok_route and tr == cpmap.compression_trace_by_coefficients(A, k)
        tilde = cpmap.subspace_trace(A.n, A.generators, k, A.backend)
        ok_comp = ok_comp and tr + tilde == cpmap.words_below(A.n, k)
    return [
        Check("oracle", _label(e), "coefficient_route", True, ok_route, 0.0, 0.0, ok_route),
        Check("oracle", _label(e), "complementarity", True, ok_comp, 0.0, 0.0, ok_comp, "tr D_k + tr(P_N Q_k) = N_k"),
    ]


def _random_pair_checks(rng: np.random.Generator, s: int) -> list[Check]:
    n = int(rng.integers(2, 4))
    A = random_contraction(n, int(rng.integers(1, 6)), rng, sc.EXACT)
    B = random_contraction(n, int(rng.integers(1, 6)), rng, sc.EXACT)
    U = random_unitary(n, rng, sc.EXACT)
    k = 4
    sa = cpmap.defect_sequence(A, k)
    sb = cpmap.defect_sequence(B, k)
    ss = cpmap.defect_sequence(direct_sum(A, B), k)
    additive = all(x.trace + y.trace == z.trace and x.rank + y.rank == z.rank for x, y, z in zip(sa.records, sb.records, ss.records))
    mixed = cpmap.defect_sequence(unitary_mix(A, U), k)
    invariant = mixed.records == sa.records
    return [
        Check("oracle", f"pair[{s}](n={n})", "direct_sum_additivity", True, additive, 0.0, 0.0, additive),
        Check("oracle", f"pair[{s}](n={n})", "unitary_mix_invariance", True, invariant, 0.0, 0.0, invariant),
    ]


def eigenvector_agreement(lam: float, k: int = 8, n: int = 2) -> float:
    """Largest level difference between the eigenvector compression and the decaying tuple (float)."""
    e = catalog.entry_eigenvector(lam, n)
    a = cpmap.defect_sequence(e.make(sc.FLOAT), k)
    b = cpmap.defect_sequence(catalog.entry_decaying("1", lam=[lam], n=n).make(sc.FLOAT), k)
    worst = 0.0
    for x, y in zip(a.records, b.records):
        worst = max(worst, abs(float(x.trace) - float(y.trace)), abs(x.rank - y.rank))
    return worst


def _eigenvector_checks() -> list[Check]:
    out = []
    for lam in (0.0, 0.5, 1 / math.sqrt(2)):
        d = eigenvector_agreement(lam)
        out.append(Check("oracle", f"eigenvector(lam={lam:.6g})", "matches_decaying", 0.0, d, d, 1e-10, d <= 1e-10, "levels 1..8, float"))
    return out


def run_suite(name: str, cfg: RunConfig) -> list[Check]:
    if name == "paper":
        return catalog_suite(cfg)
    if name == "hierarchy":
        return hierarchy_suite(cfg)
    if name == "oracle":
        return oracle_suite(cfg)
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
