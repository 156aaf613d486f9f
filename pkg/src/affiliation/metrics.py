"""Per-zone probabilities, aggregation, and the full evaluation pipeline.

Each zone is scored independently: the raw precision/recall distances are
normalized into probabilities by the survival functions, then averaged.
The precision average runs over the zones that received at least one
prediction (set S); zones with no affiliated prediction have an undefined
individual precision, represented as None and never coerced to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from . import survival as sv
from .distances import directed_distance_spans, individual_distances
from .errors import InputError
from .events import (
    GROUND_TRUTH,
    AffiliationZone,
    EventSeries,
    Interval,
    affiliate,
    affiliation_zones,
)


@dataclass(frozen=True)
class ZoneScore:
    """Local result for one ground-truth event: distances in seconds plus
    the normalized probabilities."""

    index: int
    zone: tuple[float, float]
    event: tuple[float, float]
    d_precision: float | None
    d_recall: float
    p_precision: float | None
    p_recall: float
    d_recall_signed: float | None = None


@dataclass(frozen=True)
class EvaluationReport:
    precision: float | None
    recall: float
    f1: float | None
    zone_scores: tuple[ZoneScore, ...] = field(repr=False)
    s_size: int
    n_events: int
    range: tuple[float, float]


def individual_precision_probability(
    zone: AffiliationZone, pred_fragments: Sequence[Interval]
) -> float | None:
    """Mean precision survival over the affiliated prediction mass.

    None when no prediction is affiliated; exactly 1 iff every fragment
    lies inside the event.
    """
    if not pred_fragments:
        return None
    a, b = zone.event.start, zone.event.stop
    if all(f.start >= a and f.stop <= b for f in pred_fragments):
        return 1.0
    area = 0.0
    width = 0.0
    for fragment in pred_fragments:
        width += fragment.duration
        for piece in sv.cut_precision_pieces(fragment, zone):
            area += sv.integrate_precision_piece(piece, zone)
    return _clamp(area / width)


def individual_recall_probability(
    zone: AffiliationZone, pred_fragments: Sequence[Interval]
) -> float:
    """Mean recall survival over the event; 0 when nothing is affiliated
    and exactly 1 iff the event is fully covered."""
    if not pred_fragments:
        return 0.0
    pieces = sv.cut_recall_pieces(zone, pred_fragments)
    return _recall_from_pieces(zone, pieces)


def _recall_from_pieces(zone: AffiliationZone, pieces) -> float:
    if all(piece.covered for piece in pieces):
        return 1.0
    area = sum(sv.integrate_recall_piece(piece, zone) for piece in pieces)
    return _clamp(area / zone.event.duration)


def aggregate(zone_scores: Sequence[ZoneScore]) -> tuple[float | None, float]:
    """Average the individual probabilities: precision over the zones that
    received a prediction, recall over all zones."""
    if not zone_scores:
        raise InputError("nothing to aggregate")
    defined = [z.p_precision for z in zone_scores if z.p_precision is not None]
    precision = sum(defined) / len(defined) if defined else None
    recall = sum(z.p_recall for z in zone_scores) / len(zone_scores)
    return precision, recall


def f1(precision: float | None, recall: float | None) -> float | None:
    """Harmonic mean; None when either input is undefined or both are 0."""
    if precision is None or recall is None:
        return None
    if precision + recall == 0.0:
        return None
    return 2.0 * precision * recall / (precision + recall)


def evaluate(
    gt: EventSeries,
    pred: EventSeries,
    rng: Interval,
    directionality: bool = False,
) -> EvaluationReport:
    """Score range predictions against range ground truth over ``rng``.

    With ``directionality`` enabled, each zone also reports the signed
    counterpart of the recall distance (positive when the nearest
    prediction lies after the missed ground truth, i.e. a late detection).
    """
    zones = affiliation_zones(gt, rng)
    fragment_lists = affiliate(pred, zones)
    scores = []
    for zone, fragments in zip(zones, fragment_lists):
        d_prec, d_rec = individual_distances(zone, fragments)
        p_prec = individual_precision_probability(zone, fragments)
        p_rec = individual_recall_probability(zone, fragments)
        signed = None
        if directionality and fragments:
            signed = _signed_recall_distance(zone, fragments)
        scores.append(
            ZoneScore(
                index=zone.index,
                zone=(zone.zone.start, zone.zone.stop),
                event=(zone.event.start, zone.event.stop),
                d_precision=d_prec,
                d_recall=d_rec,
                p_precision=p_prec,
                p_recall=p_rec,
                d_recall_signed=signed,
            )
        )
    return _build_report(scores, rng)


def evaluate_point_anomalies(
    gt, pred_points: Sequence[float], rng: Interval
) -> EvaluationReport:
    """Score point predictions.

    ``gt`` may be a sequence of instants (point anomalies: the survival
    loses its event-length term and the recall is the survival at the
    distance from the anomaly to the nearest prediction) or range events
    (each prediction point is scored by the range survival and the recall
    integrates over the event with the points as anchors).  Prediction
    points outside the range are ignored.
    """
    gt_list = list(gt)
    if not gt_list:
        raise InputError("ground truth must contain at least one anomaly")
    points = sorted(set(float(x) for x in pred_points))
    points = [x for x in points if rng.start <= x <= rng.stop]
    if isinstance(gt_list[0], Interval):
        series = gt if isinstance(gt, EventSeries) else EventSeries(
            tuple(gt_list), GROUND_TRUTH
        )
        return _evaluate_points_vs_ranges(series, points, rng)
    return _evaluate_points_vs_points([float(g) for g in gt_list], points, rng)


def _evaluate_points_vs_ranges(gt, points, rng) -> EvaluationReport:
    zones = affiliation_zones(gt, rng)
    scores = []
    for zone in zones:
        local = _points_in_zone(points, zone.zone, last=zone.index == len(zones) - 1)
        event_span = (zone.event.start, zone.event.stop)
        if not local:
            scores.append(
                ZoneScore(zone.index, _span(zone.zone), event_span,
                          None, math.inf, None, 0.0)
            )
            continue
        dists = [_dist_to_event(x, zone.event) for x in local]
        p_prec = sum(sv.survival_precision(zone, d) for d in dists) / len(local)
        spans = [(x, x) for x in local]
        pieces = sv.recall_pieces_from_spans(zone, spans)
        p_rec = _recall_from_pieces(zone, pieces)
        d_rec = directed_distance_spans([_span(zone.event)], spans)
        scores.append(
            ZoneScore(zone.index, _span(zone.zone), event_span,
                      sum(dists) / len(dists), d_rec, _clamp(p_prec), p_rec)
        )
    return _build_report(scores, rng)


def _evaluate_points_vs_points(gt_points, points, rng) -> EvaluationReport:
    gts = sorted(gt_points)
    for prev, cur in zip(gts, gts[1:]):
        if cur <= prev:
            raise InputError(f"duplicate ground-truth anomaly at t={cur}")
    if gts[0] < rng.start or gts[-1] > rng.stop:
        raise InputError("ground-truth anomalies must lie inside the range")
    bounds = [rng.start]
    bounds += [0.5 * (u + v) for u, v in zip(gts, gts[1:])]
    bounds.append(rng.stop)
    scores = []
    for j, (lo, hi, g) in enumerate(zip(bounds, bounds[1:], gts)):
        zone = Interval(lo, hi)
        near = min(g - lo, hi - g)
        far = max(g - lo, hi - g)
        local = _points_in_zone(points, zone, last=j == len(gts) - 1)
        if local:
            dists = [abs(x - g) for x in local]
            p_prec = sum(
                sv.point_event_survival(zone.duration, near, far, d) for d in dists
            ) / len(local)
            d_prec = sum(dists) / len(dists)
            d_rec = min(dists)
        else:
            p_prec, d_prec, d_rec = None, None, math.inf
        p_rec = (
            sv.point_event_survival(zone.duration, near, far, d_rec)
            if local
            else 0.0
        )
        scores.append(
            ZoneScore(j, _span(zone), (g, g), d_prec, d_rec,
                      None if p_prec is None else _clamp(p_prec), _clamp(p_rec))
        )
    return _build_report(scores, rng)


def _build_report(scores, rng) -> EvaluationReport:
    precision, recall = aggregate(scores)
    return EvaluationReport(
        precision=precision,
        recall=recall,
        f1=f1(precision, recall),
        zone_scores=tuple(scores),
        s_size=sum(1 for z in scores if z.p_precision is not None),
        n_events=len(scores),
        range=(rng.start, rng.stop),
    )


def _signed_recall_distance(zone, fragments) -> float:
    """Width-weighted mean of the signed offset to the nearest prediction
    over the event; covered stretches contribute zero."""
    total = 0.0
    for piece in sv.cut_recall_pieces(zone, fragments):
        if piece.covered:
            continue
        width = piece.interval.duration
        total += width * (piece.t_pivot - piece.interval.center)
    return total / zone.event.duration


def _points_in_zone(points, zone: Interval, last: bool) -> list[float]:
    if last:
        return [x for x in points if zone.start <= x <= zone.stop]
    return [x for x in points if zone.start <= x < zone.stop]


def _dist_to_event(x: float, event: Interval) -> float:
    if x < event.start:
        return event.start - x
    if x > event.stop:
        return x - event.stop
    return 0.0


def _span(iv: Interval) -> tuple[float, float]:
    return (iv.start, iv.stop)


def _clamp(p: float) -> float:
    return min(1.0, max(0.0, p))
