"""Run configuration shared by the CLI and the verification suites."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from . import scalars as sc
from .cpmap import basis_cap
from .invariants import DEFAULT_GAP
from .linalg import DEFAULT_RANK_TOL

FORMATS = ("json", "csv")


@dataclass(frozen=True)
class RunConfig:
    """Defaults: ``k_max = 10``, exact backend, rank tolerance ``1e-9``
    (relative to ``max(1, largest eigenvalue)``), convergence gap ``1e-6``,
    basis cap from ``NCURV_BASIS_CAP`` or ``2e5``, JSON output, seed 0 and
    100 random samples for the property suites."""

    k_max: int = 10
    backend: str = sc.EXACT
    rank_tolerance: float = DEFAULT_RANK_TOL
    convergence_gap: float = DEFAULT_GAP
    basis_cap: int | None = None
    output_format: str = "json"
    seed: int = 0
    samples: int = 100
    timing: bool = False

    def __post_init__(self):
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        sc.check_backend(self.backend)
        if not self.rank_tolerance > 0 or not self.convergence_gap > 0:
            raise ValueError("tolerances must be > 0")
        if self.basis_cap is not None and self.basis_cap < 1:
            raise ValueError("basis cap must be >= 1")
        if self.output_format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.samples < 0:
            raise ValueError("samples must be >= 0")

    @property
    def cap(self) -> int:
        return basis_cap(self.basis_cap)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["basis_cap"] = self.cap
        return d
