"""Evaluate keyframe video summaries against ground truth by bipartite matching."""

from .core import (
    SENTINEL,
    DistanceMatrix,
    FeatureVector,
    Frame,
    InputError,
    Matching,
    MetricKind,
    Pair,
    Summary,
    Threshold,
    build_distance_matrix,
    validate_matching,
)
from .curve import (
    PenaltyParam,
    WeightCardinalityCurve,
    min_weight_at_cardinality,
    penalized_match,
    weight_cardinality_curve,
)
from .features import frame_distance, hue_histogram, summarize_frames
from .matchers import (
    MatcherKind,
    greedy_match,
    hungarian_match,
    kannappan_match,
    mahmoud_match,
    maximal_match,
    run_matcher,
)
from .scores import EvalScores, score
from .setdist import average_best, hausdorff, semi_hausdorff

__version__ = "0.1.0"

__all__ = [
    "SENTINEL",
    "DistanceMatrix",
    "EvalScores",
    "FeatureVector",
    "Frame",
    "InputError",
    "MatcherKind",
    "Matching",
    "MetricKind",
    "Pair",
    "PenaltyParam",
    "Summary",
    "Threshold",
    "WeightCardinalityCurve",
    "average_best",
    "build_distance_matrix",
    "frame_distance",
    "greedy_match",
    "hausdorff",
    "hue_histogram",
    "hungarian_match",
    "kannappan_match",
    "mahmoud_match",
    "maximal_match",
    "min_weight_at_cardinality",
    "penalized_match",
    "run_matcher",
    "score",
    "semi_hausdorff",
    "summarize_frames",
    "validate_matching",
    "weight_cardinality_curve",
]
