"""Brute-force verification paths: Monte-Carlo sampling and grid integration.

Everything here is intentionally simple and slow.  The closed-form piece
integration elsewhere in the package is checked against trapezoidal sums
of the survival integrands, and the survival formulas themselves against
empirical frequencies under uniform random sampling.  The Monte-Carlo
recall path avoids the piece machinery entirely: for a single point
prediction the inner integral reduces to distances towards a three-point
set (the prediction and the two zone borders), which integrates directly.

Randomness comes from numpy's default generator (PCG64) seeded from the
config, so every estimate is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .events import AffiliationZone, Interval

# Grid integration keeps at least this many points per integration domain
# so that the jump of the precision survival at the event border stays
# well below the documented O(grid_step) error bound even for very short
# fragments.
MIN_GRID_POINTS = 20_000
MAX_GRID_POINTS = 2_000_000


@dataclass(frozen=True)
class OracleConfig:
    """Verification knobs.

    ``grid_step`` of None picks zone_duration / 1e5 per zone.  Grid error
    on the probabilities is O(grid_step / zone_duration).
    """

    grid_step: float | None = None
    mc_samples: int = 1_000_000
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.grid_step is not None and self.grid_step <= 0:
            raise ValueError("grid_step must be positive")
        if self.mc_samples < 1:
            raise ValueError("mc_samples must be at least 1")

    def resolve_step(self, zone_duration: float) -> float:
        return self.grid_step if self.grid_step is not None else zone_duration / 1e5


class MCEstimate(NamedTuple):
    value: float
    stderr: float
    n_samples: int


def survival_precision_mc(
    zone: AffiliationZone, d: float, config: OracleConfig = OracleConfig()
) -> MCEstimate:
    """Empirical fraction of uniform draws in the zone at distance >= d
    from the event."""
    rng = np.random.default_rng(config.rng_seed)
    xs = rng.uniform(zone.zone.start, zone.zone.stop, config.mc_samples)
    dists = _dist_to_event(xs, zone.event.start, zone.event.stop)
    hits = (dists >= d).astype(float)
    return _estimate(hits)


def expected_precision_mc(
    zone: AffiliationZone, config: OracleConfig = OracleConfig()
) -> MCEstimate:
    """Mean individual precision of a uniform random single-point
    prediction (converges to 1/2 + p^2/2)."""
    rng = np.random.default_rng(config.rng_seed)
    xs = rng.uniform(zone.zone.start, zone.zone.stop, config.mc_samples)
    dists = _dist_to_event(xs, zone.event.start, zone.event.stop)
    return _estimate(_survival_precision_values(zone, dists))


def expected_recall_mc(
    zone: AffiliationZone, config: OracleConfig = OracleConfig()
) -> MCEstimate:
    """Mean individual recall of a uniform random single-point prediction
    (converges to 1/2 regardless of the zone geometry)."""
    rng = np.random.default_rng(config.rng_seed)
    xs = rng.uniform(zone.zone.start, zone.zone.stop, config.mc_samples)
    return _estimate(_recall_for_single_points(zone, xs))


def probabilities_numeric(
    zone: AffiliationZone,
    pred_fragments: Sequence[Interval],
    config: OracleConfig = OracleConfig(),
) -> tuple[float | None, float]:
    """Trapezoidal integration of the precision/recall integrands.

    The precision integrand jumps at the event borders (the survival is 1
    on the event, lower just outside), so each fragment is integrated per
    known-continuous subdomain: inside the event the integrand is exactly
    1, outside it follows the continuous survival branch.  Follows the
    same undefined/zero conventions as the closed-form path: (None, 0.0)
    when no prediction is affiliated.
    """
    if not pred_fragments:
        return None, 0.0
    step = config.resolve_step(zone.zone.duration)
    a, b = zone.event.start, zone.event.stop

    area = 0.0
    width = 0.0
    for fragment in pred_fragments:
        s, e = fragment.start, fragment.stop
        width += fragment.duration
        for lo, hi in ((s, min(e, a)), (max(s, b), e)):
            if hi <= lo:
                continue
            xs = _grid(lo, hi, step)
            values = _survival_precision_values(
                zone, _dist_to_event(xs, a, b), zero_convention=False
            )
            area += float(np.trapezoid(values, xs))
        overlap = min(e, b) - max(s, a)
        if overlap > 0:
            area += overlap
    p_precision = area / width

    ys = _grid(a, b, step)
    dists = _dist_to_spans(ys, [(f.start, f.stop) for f in pred_fragments])
    p_recall = float(np.trapezoid(_survival_recall_values(zone, ys, dists), ys))
    p_recall /= zone.event.duration
    return p_precision, p_recall


def avg_distance_numeric(
    sources: Sequence[Interval],
    targets: Sequence[Interval],
    config: OracleConfig = OracleConfig(),
) -> float:
    """Riemann-sum version of the average directed distance."""
    if not targets:
        return math.inf
    spans = [(iv.start, iv.stop) for iv in targets]
    total_width = sum(iv.duration for iv in sources)
    step = config.resolve_step(total_width)
    area = 0.0
    for source in sources:
        xs = _grid(source.start, source.stop, step)
        area += float(np.trapezoid(_dist_to_spans(xs, spans), xs))
    return area / total_width


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    n = int(min(MAX_GRID_POINTS, max(MIN_GRID_POINTS, math.ceil((hi - lo) / step))))
    return np.linspace(lo, hi, n + 1)


def _estimate(values: np.ndarray) -> MCEstimate:
    n = values.size
    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else math.inf
    return MCEstimate(mean, stderr, n)


def _dist_to_event(xs: np.ndarray, a: float, b: float) -> np.ndarray:
    return np.maximum(a - xs, 0.0) + np.maximum(xs - b, 0.0)


def _dist_to_spans(xs: np.ndarray, spans) -> np.ndarray:
    best = np.full(xs.shape, np.inf)
    for s, e in spans:
        np.minimum(best, np.maximum(s - xs, 0.0) + np.maximum(xs - e, 0.0), out=best)
    return best


def _survival_precision_values(
    zone: AffiliationZone, d: np.ndarray, zero_convention: bool = True
) -> np.ndarray:
    L = zone.zone.duration
    values = 1.0 - (zone.event.duration + np.minimum(d, zone.m) + d) / L
    values = np.where(d >= zone.M, 0.0, values)
    if zero_convention:
        values = np.where(d <= 0.0, 1.0, values)
    return np.clip(values, 0.0, 1.0)


def _survival_recall_values(
    zone: AffiliationZone, ys: np.ndarray, d: np.ndarray
) -> np.ndarray:
    A, B = zone.zone.start, zone.zone.stop
    m_y = np.minimum(ys - A, B - ys)
    M_y = np.maximum(ys - A, B - ys)
    values = 1.0 - (np.minimum(d, m_y) + d) / (B - A)
    values = np.where(d >= M_y, 0.0, values)
    return np.clip(values, 0.0, 1.0)


def _recall_for_single_points(zone: AffiliationZone, xs: np.ndarray) -> np.ndarray:
    """Exact individual recall for every single-point prediction in xs.

    Writing the recall integrand as distances to the three-point set
    {left border, prediction, right border} lets both inner integrals
    close over signed squares: integral of |y - t| on [lo, hi] is
    g(hi - t) - g(lo - t) with g(u) = u|u|/2.
    """
    A, B = zone.zone.start, zone.zone.stop
    a, b = zone.event.start, zone.event.stop
    L = B - A
    G = b - a

    def g(u):
        return 0.5 * u * np.abs(u)

    # Mean absolute distance term.
    j_abs = g(b - xs) - g(a - xs)

    # min(|y - x|, y - A, B - y) splits at the midpoints towards each border.
    c1 = np.clip(0.5 * (A + xs), a, b)
    c2 = np.clip(0.5 * (xs + B), a, b)
    j_min = (
        (g(c1 - A) - g(a - A))
        + (g(c2 - xs) - g(c1 - xs))
        + (g(b - B) - g(c2 - B))
    )
    return np.clip(1.0 - (j_min + j_abs) / (L * G), 0.0, 1.0)
