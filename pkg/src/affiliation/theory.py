"""Closed-form scores for canonical single-zone scenarios.

With a single event filling a proportion ``p`` of its affiliation zone,
several prediction strategies admit exact scores.  These formulas double
as an independent oracle for the evaluation pipeline and as a curve
generator for plotting expected metric behavior.

Predicting the whole zone gives precision ``1/2 + p^2/2`` and recall 1,
regardless of where the event sits.  A single uniformly random point
prediction gives the same precision in expectation and recall exactly
1/2, which is what makes scores near one half read as "no better than
random".  For a single point prediction at a fixed location (event
centered in the zone), the four reference positions are:

==============  ==========  =================================================
position        precision   recall
==============  ==========  =================================================
border          0           p/4
halfway         1/2 - p/2   1/2 - p/2 + (25/(64 p)) (p - 1/5)+^2
event-start     1           1 - p + (9/(16 p)) (p - 1/3)+^2
event-center    1           1 - p/2 + (1/(2 p)) (p - 1/2)+^2
==============  ==========  =================================================

where ``(x)+`` is the positive part.  "halfway" means halfway between the
nearer zone border and the event.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .errors import InputError

BORDER = "border"
HALFWAY = "halfway"
EVENT_START = "event-start"
EVENT_CENTER = "event-center"

POSITIONS = (BORDER, HALFWAY, EVENT_START, EVENT_CENTER)


class CurvePoint(NamedTuple):
    p: float
    position: str
    precision: float
    recall: float


def whole_interval_scores(p: float) -> tuple[float, float]:
    """Scores when the entire zone is predicted anomalous."""
    _check_p(p)
    return 0.5 + 0.5 * p * p, 1.0


def expected_random_scores(p: float) -> tuple[float, float]:
    """Expected scores of a single uniformly random point prediction."""
    _check_p(p)
    return 0.5 + 0.5 * p * p, 0.5


def single_position_scores(position: str, p: float) -> tuple[float, float]:
    """Scores of a single point prediction at a reference position, for an
    event centered in its zone."""
    _check_p(p)
    if position == BORDER:
        return 0.0, 0.25 * p
    if position == HALFWAY:
        return 0.5 - 0.5 * p, 0.5 - 0.5 * p + (25.0 / (64.0 * p)) * _plus(p - 0.2) ** 2
    if position == EVENT_START:
        # Coefficient derived by direct integration: the quadratic term is
        # (3p - 1)^2 / (16 p).  Consistency check: at p = 1 this position
        # coincides with the zone border, whose recall is p/4 = 1/4.
        return 1.0, 1.0 - p + (9.0 / (16.0 * p)) * _plus(p - 1.0 / 3.0) ** 2
    if position == EVENT_CENTER:
        return 1.0, 1.0 - 0.5 * p + (0.5 / p) * _plus(p - 0.5) ** 2
    raise InputError(f"unknown position {position!r}")


def position_coordinate(position: str, p: float) -> float:
    """Realize a reference position on the unit zone [0, 1) with the event
    [1/2 - p/2, 1/2 + p/2)."""
    _check_p(p)
    if position == BORDER:
        return 0.0
    if position == HALFWAY:
        return 0.25 * (1.0 - p)
    if position == EVENT_START:
        return 0.5 * (1.0 - p)
    if position == EVENT_CENTER:
        return 0.5
    raise InputError(f"unknown position {position!r}")


def emit_curves(grid: Iterable[float]) -> list[CurvePoint]:
    """Tabulate all four position curves over a grid of proportions,
    ordered by (position, p)."""
    ps = sorted(set(float(p) for p in grid))
    rows = []
    for position in POSITIONS:
        for p in ps:
            precision, recall = single_position_scores(position, p)
            rows.append(CurvePoint(p, position, precision, recall))
    return rows


def _check_p(p: float) -> None:
    if not 0.0 < p <= 1.0:
        raise InputError(f"proportion must be in (0, 1], got {p}")


def _plus(x: float) -> float:
    return x if x > 0.0 else 0.0
