"""Schema-versioned reports with JSON and CSV serialisation."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from . import scalars as sc
from .cpmap import DefectSequence
from .invariants import FreenessVerdict, InvariantEstimate, InvariantReport, normalized

SCHEMA_VERSION = "ncurv.report/1"


@dataclass
class Report:
    command: str
    input: dict
    config: dict
    sequence: list = field(default_factory=list)
    invariants: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    timing: dict | None = None
    schema_version: str = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_dict(self) -> dict:
        d = {
            "schema_version": self.schema_version,
            "command": self.command,
            "input": self.input,
            "config": self.config,
            "sequence": self.sequence,
            "invariants": self.invariants,
            "checks": self.checks,
            "rows": self.rows,
        }
        if self.timing is not None:
            d["timing"] = self.timing
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        version = d.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {version!r}")
        return cls(
            d["command"],
            d["input"],
            d["config"],
            d.get("sequence", []),
            d.get("invariants", {}),
            d.get("checks", []),
            d.get("rows", []),
            d.get("timing"),
            version,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        """Levels for ``compute``, checks for ``verify``, rows for ``sweep``."""
        if self.command == "verify":
            return table_csv(self.checks, CHECK_COLUMNS)
        if self.command == "sweep":
            return table_csv(self.rows, SWEEP_COLUMNS)
        return table_csv(self.sequence, SEQUENCE_COLUMNS)


SEQUENCE_COLUMNS = ["k", "trace", "rank", "normalized_trace", "normalized_rank"]
CHECK_COLUMNS = ["suite", "entry", "check", "expected", "computed", "delta", "tolerance", "passed", "note"]
SWEEP_COLUMNS = ["entry", "parameter", "value", "k_used", "K_value", "K_upper", "chi_value", "chi_upper", "pure_rank", "K_expected", "chi_expected", "K_approx", "chi_approx"]


def table_csv(rows: list, columns: list) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\r\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _cell(r.get(k)) for k in columns})
    return buf.getvalue()


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return v


def fmt(x):
    if x is None:
        return None
    if isinstance(x, bool):
        return x
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    return sc.format_scalar(x)


def sequence_rows(seq: DefectSequence) -> list:
    nt = normalized(seq.traces, seq.n, seq.backend)
    nr = normalized(seq.ranks, seq.n, seq.backend)
    return [
        {"k": r.k, "trace": fmt(r.trace), "rank": r.rank, "normalized_trace": fmt(a), "normalized_rank": fmt(b)}
        for r, a, b in zip(seq.records, nt, nr)
    ]


def estimate_dict(est: InvariantEstimate) -> dict:
    return {
        "value": fmt(est.value),
        "upper_bound": fmt(est.upper_bound),
        "lower_bound": fmt(est.lower_bound),
        "k_used": est.k_used,
        "cauchy_gap": fmt(est.cauchy_gap),
        "converged": est.converged,
        "aitken": est.aitken,
    }


def invariants_dict(rep: InvariantReport, verdict: FreenessVerdict | None = None, purity=None) -> dict:
    d = {
        "curvature": estimate_dict(rep.curvature),
        "euler": estimate_dict(rep.euler),
        "pure_rank": rep.pure_rank,
        "hierarchy_ok": rep.hierarchy_ok,
        "levelwise_ok": rep.levelwise_ok,
    }
    if purity is not None:
        d["purity_indicator"] = fmt(purity)
    if verdict is not None:
        d["freeness"] = {"verdict": verdict.verdict, "non_pure": verdict.non_pure, "reason": verdict.reason}
    return d
