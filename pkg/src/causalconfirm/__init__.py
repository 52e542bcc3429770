"""Causal confirmation measures for 2x2 and stratified data.

Pool or do-adjust stratified outcome rates, detect Simpson's paradox, and
compute risk, odds, causal-confirmation and Bayesian confirmation measures.
"""

from .adjust import DoTable, ParadoxReport, detect_simpson, do_adjust, threshold_outcome_probability
from .errors import DataError, ParseError, SchemaError
from .ingest import builtin_datasets, dump_dataset, load_dataset, parse_dataset
from .measures import MEASURE_IDS, MeasureResult, compute, parse_measure_list
from .report import AnalysisReport, analyze, render_report
from .semantic import (
    Orientation,
    TruthAssignment,
    channel_from_disbelief,
    closed_form_disbelief,
    optimize_disbelief,
    predict_from_cc,
    predict_from_ce,
)
from .tables import CausalRole, JointTable, StratifiedDataset, build_from_counts, build_from_rates, pool

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport", "CausalRole", "DataError", "DoTable", "JointTable", "MEASURE_IDS",
    "MeasureResult", "Orientation", "ParadoxReport", "ParseError", "SchemaError",
    "StratifiedDataset", "TruthAssignment", "analyze", "build_from_counts", "build_from_rates",
    "builtin_datasets", "channel_from_disbelief", "closed_form_disbelief", "compute",
    "detect_simpson", "do_adjust", "dump_dataset", "load_dataset", "optimize_disbelief",
    "parse_dataset", "parse_measure_list", "pool", "predict_from_cc", "predict_from_ce",
    "render_report", "threshold_outcome_probability",
]
