"""Average directed distances between sets of time intervals.

``avg_directed_distance(X, Y)`` is the mean, over the points of X, of each
point's distance to the closest element of Y.  It is asymmetric by design:
measured from the predictions towards the ground truth it reads as a
precision, measured the other way round as a recall.  The integrand is
piecewise linear, so the integral is computed exactly by cutting each
source interval wherever the nearest target element changes (target
endpoints and midpoints of the gaps between consecutive targets) and
evaluating each linear piece at its midpoint.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import InputError
from .events import AffiliationZone, Interval

Span = tuple[float, float]


def dist_point_to_set(x: float, targets: Sequence[Interval]) -> float:
    """Distance from an instant to the closure of a set of intervals.

    Zero iff ``x`` lies inside (or on the border of) some interval;
    infinity iff the target set is empty.
    """
    return _dist_point_to_spans(x, [(iv.start, iv.stop) for iv in targets])


def avg_directed_distance(
    sources: Sequence[Interval], targets: Sequence[Interval]
) -> float:
    """Exact mean distance from points of ``sources`` to ``targets``.

    Infinity when ``targets`` is empty; the empty-source case has no
    meaningful value and is an error (callers must branch first).
    """
    src = [(iv.start, iv.stop) for iv in sources]
    if not src:
        raise InputError("directed distance from an empty set is undefined")
    return directed_distance_spans(src, [(iv.start, iv.stop) for iv in targets])


def individual_distances(
    zone: AffiliationZone, pred_fragments: Sequence[Interval]
) -> tuple[float | None, float]:
    """Per-zone precision/recall distances, in seconds.

    The precision distance is undefined (None) and the recall distance is
    infinite when no prediction is affiliated with the zone.
    """
    if not pred_fragments:
        return None, math.inf
    d_precision = avg_directed_distance(pred_fragments, [zone.event])
    d_recall = avg_directed_distance([zone.event], pred_fragments)
    return d_precision, d_recall


def _dist_point_to_spans(x: float, targets: Sequence[Span]) -> float:
    best = math.inf
    for s, e in targets:
        if x < s:
            d = s - x
        elif x > e:
            d = x - e
        else:
            return 0.0
        if d < best:
            best = d
    return best


def _cut_points(targets: Sequence[Span]) -> list[float]:
    """Points where the nearest target element changes: endpoints plus the
    midpoint of every gap between consecutive targets."""
    pts: list[float] = []
    prev_stop: float | None = None
    for s, e in targets:
        if prev_stop is not None and s > prev_stop:
            pts.append(0.5 * (prev_stop + s))
        pts.append(s)
        pts.append(e)
        prev_stop = e
    return pts


def directed_distance_spans(
    sources: Sequence[Span], targets: Sequence[Span]
) -> float:
    """Directed distance over raw ``(start, stop)`` spans.

    Zero-width source spans are treated as points and averaged discretely,
    which is the limit of the interval form as widths shrink to zero.
    """
    if not targets:
        return math.inf
    targets = sorted(targets)
    total_width = sum(e - s for s, e in sources)
    if total_width == 0.0:
        return sum(_dist_point_to_spans(s, targets) for s, _ in sources) / len(sources)
    cuts = sorted(_cut_points(targets))
    area = 0.0
    for s, e in sources:
        if e == s:
            continue
        edges = [s] + [c for c in cuts if s < c < e] + [e]
        for lo, hi in zip(edges, edges[1:]):
            area += (hi - lo) * _dist_point_to_spans(0.5 * (lo + hi), targets)
    return area / total_width
