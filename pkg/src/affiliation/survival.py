"""Survival functions and their exact integrals over prediction fragments.

Each observed distance is scored against a single-point prediction drawn
uniformly at random within the affiliation zone: the survival value is the
probability that the random prediction would have done at least as badly.

For a zone ``[A, B)`` holding the event ``[a, b)`` with border distances
``m <= M``, the precision survival is 1 at d = 0 and, on ``(0, M]``::

    1 - (|event| + min(d, m) + d) / |zone|

dropping to 0 beyond M.  Seen from a ground-truth sample ``y`` (with its
own border distances ``m_y <= M_y``), the recall survival on ``[0, M_y]``
is::

    1 - (min(d, m_y) + d) / |zone|

Both integrands are piecewise linear in time once the integration domain
is cut at the points where a min() changes branch, so every piece
integrates exactly as width times the survival at the piece midpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ContractViolation, InputError
from .events import AffiliationZone, Interval

BEFORE_GT = "before-gt"
INSIDE_GT = "inside-gt"
AFTER_GT = "after-gt"

Span = tuple[float, float]


@dataclass(frozen=True)
class RecallSample:
    """A ground-truth instant with its distances to the zone borders."""

    y: float
    m_y: float
    M_y: float

    @classmethod
    def for_zone(cls, zone: AffiliationZone, y: float) -> RecallSample:
        if not zone.zone.contains(y):
            raise InputError(
                f"sample {y} outside zone [{zone.zone.start}, {zone.zone.stop})"
            )
        left = y - zone.zone.start
        right = zone.zone.stop - y
        return cls(y, min(left, right), max(left, right))


@dataclass(frozen=True)
class PrecisionPiece:
    """A fragment slice whose distance to the event varies linearly.

    Side pieces never straddle the breakpoint at distance ``m``:
    ``d_max <= m`` or ``d_min >= m`` holds, so the survival restricted to
    the piece is a single linear segment.
    """

    interval: Interval
    side: str
    d_min: float
    d_max: float

    @property
    def d_center(self) -> float:
        return 0.5 * (self.d_min + self.d_max)


@dataclass(frozen=True)
class RecallPiece:
    """A slice of the ground-truth event with a uniform integration rule.

    Covered pieces lie inside the predictions and integrate to their own
    width.  Uncovered pieces have a unique closest prediction endpoint
    (``t_pivot``) and resolve ``min(d, m_y)`` the same way at every point.
    """

    interval: Interval
    covered: bool
    t_pivot: float | None = None
    d_pivot: float = 0.0
    m_center: float = 0.0


def survival_precision(zone: AffiliationZone, d: float) -> float:
    """Probability that a uniform random instant in the zone lies at
    distance >= d from the event."""
    if d < 0:
        raise InputError(f"distance must be nonnegative, got {d}")
    if d == 0.0:
        return 1.0
    if d >= zone.M:
        return 0.0
    value = 1.0 - (zone.event.duration + min(d, zone.m) + d) / zone.zone.duration
    return max(0.0, value)


def survival_recall(zone: AffiliationZone, sample: RecallSample, d: float) -> float:
    """Probability that a uniform random instant in the zone lies at
    distance >= d from the sample ``y``."""
    if d < 0:
        raise InputError(f"distance must be nonnegative, got {d}")
    if d >= sample.M_y:
        return 0.0
    value = 1.0 - (min(d, sample.m_y) + d) / zone.zone.duration
    return max(0.0, value)


def point_event_survival(zone_duration: float, near: float, far: float, d: float) -> float:
    """Survival for a zero-width event with border distances near <= far.

    Shared by the point-anomaly precision (the event-length term vanishes)
    and by the recall seen from a single ground-truth instant.
    """
    if d < 0:
        raise InputError(f"distance must be nonnegative, got {d}")
    if d == 0.0:
        return 1.0
    if d >= far:
        return 0.0
    return max(0.0, 1.0 - (min(d, near) + d) / zone_duration)


def cut_precision_pieces(
    pred_fragment: Interval, zone: AffiliationZone
) -> list[PrecisionPiece]:
    """Slice a fragment into before/inside/after parts, splitting the side
    parts again where the distance crosses ``m``."""
    a, b = zone.event.start, zone.event.stop
    s, e = pred_fragment.start, pred_fragment.stop
    if s < zone.zone.start or e > zone.zone.stop:
        raise InputError("fragment extends outside its affiliation zone")
    pieces: list[PrecisionPiece] = []
    if s < a:
        stop = min(e, a)
        pieces += _side_pieces(s, stop, a - stop, a - s, BEFORE_GT, zone.m, a)
    lo, hi = max(s, a), min(e, b)
    if hi > lo:
        pieces.append(PrecisionPiece(Interval(lo, hi), INSIDE_GT, 0.0, 0.0))
    if e > b:
        start = max(s, b)
        pieces += _side_pieces(start, e, start - b, e - b, AFTER_GT, zone.m, b)
    return pieces


def _side_pieces(lo, hi, d_min, d_max, side, m, border) -> list[PrecisionPiece]:
    if hi <= lo:
        return []
    if not d_min < m < d_max:
        return [PrecisionPiece(Interval(lo, hi), side, d_min, d_max)]
    cut = border - m if side == BEFORE_GT else border + m
    if not lo < cut < hi:
        # The crossing collides with an endpoint under rounding; clamp the
        # distance range onto one side of m (distortion is at most one ulp).
        near_side = cut <= lo if side == BEFORE_GT else cut >= hi
        if near_side:
            return [PrecisionPiece(Interval(lo, hi), side, min(d_min, m), m)]
        return [PrecisionPiece(Interval(lo, hi), side, m, max(d_max, m))]
    if side == BEFORE_GT:
        # Distance border - x decreases left to right; the far part is left.
        return [
            PrecisionPiece(Interval(lo, cut), side, m, d_max),
            PrecisionPiece(Interval(cut, hi), side, d_min, m),
        ]
    return [
        PrecisionPiece(Interval(lo, cut), side, d_min, m),
        PrecisionPiece(Interval(cut, hi), side, m, d_max),
    ]


def integrate_precision_piece(piece: PrecisionPiece, zone: AffiliationZone) -> float:
    """Exact integral of the precision survival over one piece."""
    width = piece.interval.duration
    if piece.side == INSIDE_GT:
        return width
    m = zone.m
    if not (piece.d_max <= m or piece.d_min >= m):
        raise ContractViolation(
            f"precision piece straddles the m={m} breakpoint "
            f"(d in [{piece.d_min}, {piece.d_max}])"
        )
    d_center = piece.d_center
    value = 1.0 - (
        zone.event.duration + min(d_center, m) + d_center
    ) / zone.zone.duration
    return width * max(0.0, value)


def cut_recall_pieces(
    zone: AffiliationZone, pred_fragments: Sequence[Interval]
) -> list[RecallPiece]:
    """Partition the event into covered pieces and pivot pieces.

    Uncovered stretches are split at the midpoint between their adjacent
    predictions (each half keeps a unique closest endpoint) and again
    wherever ``min(d, m_y)`` changes branch, so each piece integrates in
    closed form.
    """
    if not pred_fragments:
        raise ContractViolation(
            "recall pieces need at least one prediction fragment; "
            "handle the empty case before cutting"
        )
    spans = sorted((iv.start, iv.stop) for iv in pred_fragments)
    return recall_pieces_from_spans(zone, spans)


def recall_pieces_from_spans(
    zone: AffiliationZone, spans: Sequence[Span]
) -> list[RecallPiece]:
    """Piece construction over raw spans; zero-width spans act as point
    predictions (they cover nothing but anchor distances)."""
    if not spans:
        raise ContractViolation("no prediction spans to cut against")
    a, b = zone.event.start, zone.event.stop
    pieces: list[RecallPiece] = []
    cursor = a
    for s, e in spans:
        o_s, o_e = max(s, a), min(e, b)
        if o_e > o_s:
            if o_s > cursor:
                pieces += _gap_pieces(zone, spans, cursor, o_s)
            pieces.append(RecallPiece(Interval(o_s, o_e), covered=True))
            cursor = max(cursor, o_e)
        elif s == e and cursor < s < b:
            # A point prediction inside the event splits the gap around it.
            pieces += _gap_pieces(zone, spans, cursor, s)
            cursor = s
    if cursor < b:
        pieces += _gap_pieces(zone, spans, cursor, b)
    return pieces


def _gap_pieces(zone, spans, g0, g1) -> list[RecallPiece]:
    left = None
    right = None
    for s, e in spans:
        if e <= g0:
            left = e if left is None else max(left, e)
        if s >= g1 and right is None:
            right = s
        elif s >= g1:
            right = min(right, s)
    if left is None and right is None:
        raise ContractViolation(f"gap [{g0}, {g1}) has no anchoring prediction")
    halves: list[tuple[float, float, float]] = []
    if left is None:
        halves.append((g0, g1, right))
    elif right is None:
        halves.append((g0, g1, left))
    else:
        mid = 0.5 * (left + right)
        if mid <= g0:
            halves.append((g0, g1, right))
        elif mid >= g1:
            halves.append((g0, g1, left))
        else:
            halves.append((g0, mid, left))
            halves.append((mid, g1, right))
    pieces = []
    for lo, hi, pivot in halves:
        pieces += _pivot_pieces(zone, lo, hi, pivot)
    return pieces


def _pivot_pieces(zone, lo, hi, pivot) -> list[RecallPiece]:
    """Split a single-pivot stretch at the breakpoints of min(d, m_y)."""
    A, B = zone.zone.start, zone.zone.stop
    breaks = sorted(
        c
        for c in (0.5 * (A + B), 0.5 * (A + pivot), 0.5 * (B + pivot))
        if lo < c < hi
    )
    edges = [lo] + breaks + [hi]
    pieces = []
    for p, q in zip(edges, edges[1:]):
        if q <= p:
            continue
        y_c = 0.5 * (p + q)
        pieces.append(
            RecallPiece(
                Interval(p, q),
                covered=False,
                t_pivot=pivot,
                d_pivot=abs(pivot - y_c),
                m_center=min(y_c - A, B - y_c),
            )
        )
    return pieces


def integrate_recall_piece(piece: RecallPiece, zone: AffiliationZone) -> float:
    """Exact integral of the recall survival over one piece."""
    width = piece.interval.duration
    if piece.covered:
        return width
    if piece.t_pivot is None:
        raise ContractViolation("uncovered recall piece lacks a pivot")
    value = 1.0 - (
        min(piece.d_pivot, piece.m_center) + piece.d_pivot
    ) / zone.zone.duration
    return width * max(0.0, value)
