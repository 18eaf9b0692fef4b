"""Curvature invariant, Euler characteristic and related quantities for row contractions."""

from .cpmap import (
    DefectSequence,
    ResourceLimitError,
    defect_rank,
    defect_sequence,
    defect_trace,
    purity_indicator,
)
from .invariants import (
    curvature,
    euler,
    freeness_test,
    hierarchy_report,
    pure_rank,
    tilde_curvature,
)
from .operators import (
    COMPLEMENT,
    SPAN,
    DecayingAtomic,
    DenseTuple,
    LeftRegular,
    ValidationError,
    direct_sum,
    make_compression,
    make_decaying_atomic,
    make_dense,
    unitary_mix,
)

__version__ = "0.1.0"

__all__ = [
    "COMPLEMENT",
    "SPAN",
    "DecayingAtomic",
    "DefectSequence",
    "DenseTuple",
    "LeftRegular",
    "ResourceLimitError",
    "ValidationError",
    "curvature",
    "defect_rank",
    "defect_sequence",
    "defect_trace",
    "direct_sum",
    "euler",
    "freeness_test",
    "hierarchy_report",
    "make_compression",
    "make_decaying_atomic",
    "make_dense",
    "pure_rank",
    "purity_indicator",
    "tilde_curvature",
    "unitary_mix",
]
