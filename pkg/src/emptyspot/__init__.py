"""Predict which interaction records conceal hidden network nodes.

Pipeline: generate a network, simulate basket-shaped communication records,
hide a node set, cluster the observed nodes by co-occurrence, rank baskets
with the predictor function and measure precision against the ground truth.
"""

__version__ = "0.1.0"

from .baskets import Dataset, HiddenTruth, HidingSpec, build_hidden_set, coverage_fraction, hide_nodes, simulate_baskets
from .clustering import Clustering, kmedoid, objective
from .cooccurrence import ClosenessMatrix, FrequencyTable, closeness_matrix, frequency, jaccard
from .errors import EmptySpotError, GenerationError, ParameterError, ParseError, StageError, StructuralError
from .evaluation import ExperimentConfig, PrecisionCurve, precision_curve, run_experiment, run_trial
from .graphs import (
    Graph,
    degree_summary,
    distance_stats,
    generate_ba,
    generate_homogeneous,
    generate_ws,
    select_targets,
)
from .predictor import RankedBaskets, basket_score, rank_baskets

__all__ = [
    "ClosenessMatrix", "Clustering", "Dataset", "EmptySpotError", "ExperimentConfig",
    "FrequencyTable", "GenerationError", "Graph", "HiddenTruth", "HidingSpec",
    "ParameterError", "ParseError", "PrecisionCurve", "RankedBaskets", "StageError",
    "StructuralError", "basket_score", "build_hidden_set", "closeness_matrix",
    "coverage_fraction", "degree_summary", "distance_stats", "frequency", "generate_ba",
    "generate_homogeneous", "generate_ws", "hide_nodes", "jaccard", "kmedoid", "objective",
    "precision_curve", "rank_baskets", "run_experiment", "run_trial", "select_targets",
    "simulate_baskets",
]
