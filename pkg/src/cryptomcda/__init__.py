"""Criteria weighting and TOPSIS ranking for cryptocurrency price histories."""

from .decision import (
    PAPER_CRITERIA,
    CriterionSpec,
    DecisionMatrix,
    Sense,
    Stage,
    assemble,
    normalize_vector_modulus,
    transform_min_to_max,
)
from .features import CriteriaRow, WindowSpec, criteria_row, enumerate_windows
from .ingest import OhlcvRecord, OhlcvSeries, check_alignment, filter_date_range, parse_csv
from .pipeline import RunConfig, RunReport, emit_plot_data, run
from .topsis import TopsisResult, compare_rankings, topsis_rank
from .weighting import (
    WeightVector,
    compute_all,
    critic_weights,
    entropy_weights,
    mean_weights,
    stddev_weights,
)

__version__ = "0.1.0"

__all__ = [
    "PAPER_CRITERIA",
    "CriterionSpec",
    "DecisionMatrix",
    "Sense",
    "Stage",
    "assemble",
    "normalize_vector_modulus",
    "transform_min_to_max",
    "CriteriaRow",
    "WindowSpec",
    "criteria_row",
    "enumerate_windows",
    "OhlcvRecord",
    "OhlcvSeries",
    "check_alignment",
    "filter_date_range",
    "parse_csv",
    "RunConfig",
    "RunReport",
    "emit_plot_data",
    "run",
    "TopsisResult",
    "compare_rankings",
    "topsis_rank",
    "WeightVector",
    "compute_all",
    "critic_weights",
    "entropy_weights",
    "mean_weights",
    "stddev_weights",
]
