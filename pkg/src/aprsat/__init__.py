"""SAT-based computation of van der Waerden and Green-Tao numbers."""

from .drivers import (
    NumberResult,
    SearchAborted,
    compute_number,
    compute_transversal_sequence,
    decide_threshold,
    verify_certificate,
)
from .estimation import CountModel, count_progressions, estimate_count, fit_count_model
from .hypergraph import Family, Hypergraph, gt_hypergraph, vdw_hypergraph
from .instances import NBClauseSet, ParameterTuple, build_instance, classify_tuple
from .translation import TranslationKind, translate

__version__ = "0.1.0"

__all__ = [
    "CountModel",
    "Family",
    "Hypergraph",
    "NBClauseSet",
    "NumberResult",
    "ParameterTuple",
    "SearchAborted",
    "TranslationKind",
    "build_instance",
    "classify_tuple",
    "compute_number",
    "compute_transversal_sequence",
    "count_progressions",
    "decide_threshold",
    "estimate_count",
    "fit_count_model",
    "gt_hypergraph",
    "translate",
    "vdw_hypergraph",
    "verify_certificate",
]
