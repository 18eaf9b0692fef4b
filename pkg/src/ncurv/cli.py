"""Command-line front end.

    ncurv compute SPEC.json      invariants of one representation
    ncurv verify SUITE           paper | hierarchy | oracle
    ncurv sweep ENTRY --param P  one CSV/JSON row per grid value
    ncurv catalog list|show      browse the example catalogue

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 invalid
operator (for example not a row contraction), 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import catalog
from . import invariants as inv
from . import scalars as sc
from . import spec_io
from .config import RunConfig
from .cpmap import ResourceLimitError, defect_sequence, purity_indicator
from .operators import ValidationError
from .report import Report, fmt, invariants_dict, sequence_rows
from .verify import MAX_LEVEL, SUITES, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_RESOURCE = 4


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kmax", type=int, default=10, help="largest level k (default 10)")
    p.add_argument("--backend", choices=sc.BACKENDS, default=sc.EXACT, help="scalar backend (default exact)")
    p.add_argument("--tol", type=float, default=1e-9, help="relative rank tolerance (default 1e-9)")
    p.add_argument("--gap", type=float, default=1e-6, help="convergence gap threshold (default 1e-6)")
    p.add_argument("--cap", type=int, default=None, help="basis-size cap (default $NCURV_BASIS_CAP or 200000)")
    p.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100, help="random instances for property suites")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncurv", description="Curvature and Euler invariants of row contractions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute invariants for a representation spec file")
    p.add_argument("spec", type=Path)
    _common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _common(p)

    p = sub.add_parser("sweep", help="sweep one parameter of a catalog entry")
    p.add_argument("entry", choices=catalog.entry_names())
    p.add_argument("--param", required=True)
    p.add_argument("--values", nargs="+", default=None, help="grid values, e.g. 0 0.25 1/3 (bits as 101)")
    p.add_argument("--grid", default=None, help="linear grid START:STOP:COUNT")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="fixed entry parameters")
    _common(p)

    p = sub.add_parser("catalog", help="list or show catalog entries")
    csub = p.add_subparsers(dest="action", required=True)
    csub.add_parser("list")
    show = csub.add_parser("show")
    show.add_argument("name", choices=catalog.entry_names())
    show.add_argument("--set", action="append", default=[], metavar="KEY=VALUE")
    return parser


def config_from(args) -> RunConfig:
    return RunConfig(
        k_max=args.kmax,
        backend=args.backend,
        rank_tolerance=args.tol,
        convergence_gap=args.gap,
        basis_cap=args.cap,
        output_format=args.format,
        seed=args.seed,
        samples=args.samples,
        timing=args.timing,
    )


def _pairs(items: list[str]) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise spec_io.SpecError(f"--set expects KEY=VALUE, got {item!r}")
        out[key.strip()] = value.strip()
    return out


# ---------------------------------------------------------------- commands


def cmd_compute(path: Path, cfg: RunConfig) -> Report:
    spec = spec_io.load_spec(path)
    start = time.perf_counter()
    A = spec_io.build(spec, cfg.backend, cfg.rank_tolerance)
    seq = defect_sequence(A, cfg.k_max, cfg.rank_tolerance, cfg.basis_cap)
    rep = inv.report_from(seq, cfg.convergence_gap)
    purity = purity_indicator(A, cfg.k_max, cfg.basis_cap)
    verdict = inv.freeness_test(A, cfg.k_max, cfg.rank_tolerance, cfg.convergence_gap, cap=cfg.basis_cap)
    elapsed = time.perf_counter() - start
    return Report(
        "compute",
        spec,
        cfg.to_dict(),
        sequence_rows(seq),
        invariants_dict(rep, verdict, purity),
        timing={"seconds": elapsed} if cfg.timing else None,
    )


def cmd_verify(suite: str, cfg: RunConfig) -> Report:
    start = time.perf_counter()
    checks = [c.to_dict() for c in run_suite(suite, cfg)]
    elapsed = time.perf_counter() - start
    passed = sum(c["passed"] for c in checks)
    return Report(
        "verify",
        {"suite": suite},
        cfg.to_dict(),
        checks=checks,
        invariants={"checks": len(checks), "passed": passed, "failed": len(checks) - passed},
        timing={"seconds": elapsed} if cfg.timing else None,
    )


def grid_values(values: list[str] | None, grid: str | None) -> list:
    if values and grid:
        raise spec_io.SpecError("give --values or --grid, not both")
    if grid:
        try:
            a, b, count = grid.split(":")
            return [float(x) for x in np.linspace(float(Fraction(a)), float(Fraction(b)), int(count))]
        except ValueError as exc:
            raise spec_io.SpecError(f"bad --grid {grid!r}; expected START:STOP:COUNT") from exc
    if not values:
        raise spec_io.SpecError("sweep needs --values or --grid")
    return list(values)


def sweep_row(entry: catalog.CatalogEntry, param: str, value, cfg: RunConfig) -> dict:
    backend = cfg.backend if cfg.backend in entry.backends else entry.default_backend
    k = min(cfg.k_max, MAX_LEVEL.get(entry.n, cfg.k_max))
    row = {"entry": entry.name, "parameter": param, "value": str(value), "k_used": k}
    if entry.kind == catalog.SUBSPACE:
        est = inv.tilde_curvature(entry.n, entry.make(backend), k, backend=backend, gap=cfg.convergence_gap)
        row.update({"K_value": fmt(est.value), "K_upper": fmt(est.upper_bound), "K_expected": fmt(entry.expected.get("tilde")), "K_approx": float(est.value)})
        return row
    seq = defect_sequence(entry.make(backend), k, cfg.rank_tolerance, cfg.basis_cap)
    rep = inv.report_from(seq, cfg.convergence_gap)
    row.update(
        {
            "K_value": fmt(rep.curvature.value),
            "K_upper": fmt(rep.curvature.upper_bound),
            "chi_value": fmt(rep.euler.value),
            "chi_upper": fmt(rep.euler.upper_bound),
            "pure_rank": rep.pure_rank,
            "K_expected": fmt(entry.expected.get("curvature")),
            "chi_expected": fmt(entry.expected.get("euler")),
            "K_approx": float(rep.curvature.value),
            "chi_approx": float(rep.euler.value),
        }
    )
    return row


def cmd_sweep(name: str, param: str, values: list, fixed: dict, cfg: RunConfig) -> Report:
    _, schema = catalog.ENTRIES[name]
    if param not in schema:
        raise spec_io.SpecError(f"entry {name!r} has no parameter {param!r}; parameters: {', '.join(sorted(schema))}")
    start = time.perf_counter()
    rows = []
    for v in values:
        try:
            entry = catalog.get_entry(name, **{**fixed, param: v})
        except KeyError as exc:
            raise spec_io.SpecError(str(exc)) from exc
        rows.append(sweep_row(entry, param, v, cfg))
    elapsed = time.perf_counter() - start
    return Report(
        "sweep",
        {"entry": name, "parameter": param, "values": [str(v) for v in values], "fixed": fixed},
        cfg.to_dict(),
        rows=rows,
        timing={"seconds": elapsed} if cfg.timing else None,
    )


def cmd_catalog(args) -> str:
    if args.action == "list":
        lines = []
        for name in catalog.entry_names():
            fn, schema = catalog.ENTRIES[name]
            doc = (fn.__doc__ or "").strip().splitlines()
            params = ", ".join(f"{k}:{v if isinstance(v, str) else v.__name__}" for k, v in schema.items())
            lines.append(f"{name:22s} ({params})  {doc[0] if doc else ''}".rstrip())
        return "\n".join(lines) + "\n"
    try:
        entry = catalog.get_entry(args.name, **_pairs(args.set))
    except KeyError as exc:
        raise spec_io.SpecError(str(exc)) from exc
    d = entry.describe()
    _, schema = catalog.ENTRIES[args.name]
    d["parameter_schema"] = {k: v if isinstance(v, str) else v.__name__ for k, v in schema.items()}
    return json.dumps(d, indent=2, default=str) + "\n"


# -------------------------------------------------------------------- main


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _render(report: Report, fmt_name: str) -> str:
    return report.to_csv() if fmt_name == "csv" else report.to_json() + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "catalog":
            _emit(cmd_catalog(args), None)
            return EXIT_OK
        cfg = config_from(args)
        if args.command == "compute":
            report = cmd_compute(args.spec, cfg)
        elif args.command == "verify":
            report = cmd_verify(args.suite, cfg)
        else:
            values = grid_values(args.values, args.grid)
            report = cmd_sweep(args.entry, args.param, values, _pairs(args.set), cfg)
        _emit(_render(report, cfg.output_format), args.out)
        if args.command == "verify" and not report.passed:
            failed = [c for c in report.checks if not c["passed"]]
            print(f"ncurv: {len(failed)} check(s) failed", file=sys.stderr)
            return EXIT_FAILED
        return EXIT_OK
    except spec_io.SpecError as exc:
        print(f"ncurv: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except sc.BackendError as exc:
        print(f"ncurv: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"ncurv: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValidationError, ValueError, ArithmeticError) as exc:
        print(f"ncurv: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
