"""Affiliation precision/recall for time-series anomaly detection.

Event-level, parameter-free precision and recall: each ground-truth event
owns the part of the timeline closest to it (its affiliation zone), the
predictions affiliated with each zone are scored by directed temporal
distances, and those distances are normalized into probabilities by
comparison against a uniformly random single-point prediction.  Scores
near one half read as "no better than random"; a zone with no affiliated
prediction has an undefined precision rather than a zero.
"""

from .baselines import (
    ConfusionCounts,
    TrivialRule,
    adversary_predictions,
    classical_precision_recall,
    confusion_counts,
    point_adjust_adversary_predictions,
    trivial_predictions,
)
from .distances import avg_directed_distance, dist_point_to_set, individual_distances
from .errors import ContractViolation, InputError
from .events import (
    GROUND_TRUTH,
    PREDICTION,
    AffiliationZone,
    EventSeries,
    Interval,
    LabeledSeries,
    affiliate,
    affiliation_zones,
    events_from_labels,
    rasterize,
)
from .metrics import (
    EvaluationReport,
    ZoneScore,
    aggregate,
    evaluate,
    evaluate_point_anomalies,
    f1,
    individual_precision_probability,
    individual_recall_probability,
)
from .oracle import (
    MCEstimate,
    OracleConfig,
    avg_distance_numeric,
    expected_precision_mc,
    expected_recall_mc,
    probabilities_numeric,
    survival_precision_mc,
)
from .survival import (
    PrecisionPiece,
    RecallPiece,
    RecallSample,
    cut_precision_pieces,
    cut_recall_pieces,
    integrate_precision_piece,
    integrate_recall_piece,
    point_event_survival,
    survival_precision,
    survival_recall,
)
from .theory import (
    BORDER,
    EVENT_CENTER,
    EVENT_START,
    HALFWAY,
    POSITIONS,
    CurvePoint,
    emit_curves,
    expected_random_scores,
    position_coordinate,
    single_position_scores,
    whole_interval_scores,
)

__version__ = "0.1.0"

__all__ = [
    "AffiliationZone",
    "BORDER",
    "ConfusionCounts",
    "ContractViolation",
    "CurvePoint",
    "EVENT_CENTER",
    "EVENT_START",
    "EventSeries",
    "EvaluationReport",
    "GROUND_TRUTH",
    "HALFWAY",
    "InputError",
    "Interval",
    "LabeledSeries",
    "MCEstimate",
    "OracleConfig",
    "POSITIONS",
    "PREDICTION",
    "PrecisionPiece",
    "RecallPiece",
    "RecallSample",
    "TrivialRule",
    "ZoneScore",
    "adversary_predictions",
    "affiliate",
    "affiliation_zones",
    "aggregate",
    "avg_directed_distance",
    "avg_distance_numeric",
    "classical_precision_recall",
    "confusion_counts",
    "cut_precision_pieces",
    "cut_recall_pieces",
    "dist_point_to_set",
    "emit_curves",
    "evaluate",
    "evaluate_point_anomalies",
    "events_from_labels",
    "expected_precision_mc",
    "expected_random_scores",
    "expected_recall_mc",
    "f1",
    "individual_distances",
    "individual_precision_probability",
    "individual_recall_probability",
    "integrate_precision_piece",
    "integrate_recall_piece",
    "point_adjust_adversary_predictions",
    "point_event_survival",
    "position_coordinate",
    "probabilities_numeric",
    "rasterize",
    "single_position_scores",
    "survival_precision",
    "survival_precision_mc",
    "survival_recall",
    "trivial_predictions",
    "whole_interval_scores",
]
