"""Tests for the survival functions and the exact piece integration."""

import math

import numpy as np
import pytest

from affiliation import (
    AffiliationZone,
    ContractViolation,
    InputError,
    Interval,
    OracleConfig,
    RecallSample,
    cut_precision_pieces,
    cut_recall_pieces,
    integrate_precision_piece,
    integrate_recall_piece,
    point_event_survival,
    probabilities_numeric,
    survival_precision,
    survival_precision_mc,
    survival_recall,
)
from affiliation.survival import AFTER_GT, BEFORE_GT, INSIDE_GT

ZONE = AffiliationZone(Interval(0, 90), Interval(20, 40))  # m=20, M=50


class TestSurvivalPrecision:
    def test_is_one_at_zero(self):
        assert survival_precision(ZONE, 0.0) == 1.0

    def test_interior_value(self):
        # 1 - (20 + 10 + 10) / 90
        assert survival_precision(ZONE, 10.0) == pytest.approx(5 / 9)

    def test_zero_at_and_beyond_max_distance(self):
        assert survival_precision(ZONE, 50.0) == 0.0
        assert survival_precision(ZONE, 80.0) == 0.0
        assert survival_precision(ZONE, math.inf) == 0.0

    def test_negative_distance_rejected(self):
        with pytest.raises(InputError):
            survival_precision(ZONE, -1.0)

    def test_nonincreasing_and_bounded(self):
        grid = np.linspace(0.0, 60.0, 500)
        values = [survival_precision(ZONE, float(d)) for d in grid]
        assert all(0.0 <= v <= 1.0 for v in values)
        assert all(a >= b - 1e-15 for a, b in zip(values, values[1:]))


class TestSurvivalRecall:
    def test_sample_construction(self):
        s = RecallSample.for_zone(ZONE, 30.0)
        assert s.m_y == 30.0 and s.M_y == 60.0
        with pytest.raises(InputError):
            RecallSample.for_zone(ZONE, 95.0)

    def test_values(self):
        s = RecallSample.for_zone(ZONE, 30.0)
        assert survival_recall(ZONE, s, 0.0) == 1.0
        assert survival_recall(ZONE, s, 10.0) == pytest.approx(7 / 9)
        assert survival_recall(ZONE, s, 60.0) == 0.0
        assert survival_recall(ZONE, s, math.inf) == 0.0
        with pytest.raises(InputError):
            survival_recall(ZONE, s, -0.5)

    def test_point_event_survival_matches_recall_form(self):
        s = RecallSample.for_zone(ZONE, 30.0)
        for d in (0.0, 5.0, 29.9, 30.0, 45.0, 59.9, 60.0, 70.0):
            assert point_event_survival(90.0, 30.0, 60.0, d) == pytest.approx(
                survival_recall(ZONE, s, d)
            )


class TestPrecisionPieces:
    def test_three_way_cut(self):
        pieces = cut_precision_pieces(Interval(10, 60), ZONE)
        spans = [(p.interval.start, p.interval.stop, p.side) for p in pieces]
        assert spans == [
            (10, 20, BEFORE_GT),
            (20, 40, INSIDE_GT),
            (40, 60, AFTER_GT),
        ]

    def test_fragment_inside_event(self):
        pieces = cut_precision_pieces(Interval(25, 32), ZONE)
        assert len(pieces) == 1 and pieces[0].side == INSIDE_GT

    def test_split_at_m_breakpoint(self):
        pieces = cut_precision_pieces(Interval(40, 90), ZONE)
        spans = [(p.interval.start, p.interval.stop) for p in pieces]
        assert spans == [(40, 60), (60, 90)]
        assert pieces[0].d_min == 0 and pieces[0].d_max == 20
        assert pieces[1].d_min == 20 and pieces[1].d_max == 50

    def test_before_side_split(self):
        # m = 20 reached at x = 0 exactly, so no split before the event here;
        # use a zone with slack on the left instead.
        zone = AffiliationZone(Interval(0, 100), Interval(60, 70))  # m=30
        pieces = cut_precision_pieces(Interval(10, 50), zone)
        spans = [(p.interval.start, p.interval.stop) for p in pieces]
        assert spans == [(10, 30), (30, 50)]
        assert pieces[0].d_min == 30 and pieces[0].d_max == 50
        assert pieces[1].d_min == 10 and pieces[1].d_max == 30

    def test_integration_values(self):
        inside = cut_precision_pieces(Interval(25, 32), ZONE)[0]
        assert integrate_precision_piece(inside, ZONE) == 7.0
        (piece,) = cut_precision_pieces(Interval(50, 60), ZONE)
        assert integrate_precision_piece(piece, ZONE) == pytest.approx(40 / 9)
        # A piece ending exactly at the far border integrates the tail of the
        # survival down to zero.
        far = cut_precision_pieces(Interval(60, 90), ZONE)[0]
        # linear from 1-(20+20+20)/90 to 0, mean at d_center=35
        assert integrate_precision_piece(far, ZONE) == pytest.approx(30 * (1 - 75 / 90))

    def test_straddling_piece_rejected(self):
        from affiliation import PrecisionPiece

        bad = PrecisionPiece(Interval(45, 70), AFTER_GT, 5.0, 30.0)
        with pytest.raises(ContractViolation):
            integrate_precision_piece(bad, ZONE)


class TestRecallPieces:
    def test_fully_covered(self):
        pieces = cut_recall_pieces(ZONE, [Interval(10, 50)])
        assert len(pieces) == 1
        assert pieces[0].covered
        assert (pieces[0].interval.start, pieces[0].interval.stop) == (20, 40)

    def test_single_distant_prediction(self):
        zone = AffiliationZone(Interval(0, 90), Interval(20, 30))
        pieces = cut_recall_pieces(zone, [Interval(40, 41)])
        assert all(not p.covered for p in pieces)
        assert all(p.t_pivot == 40 for p in pieces)
        assert sum(p.interval.duration for p in pieces) == pytest.approx(10.0)

    def test_worked_example_cuts(self):
        zone = AffiliationZone(Interval(10800, 11580), Interval(10800, 11400))
        preds = [Interval(11100, 11160), Interval(11220, 11400), Interval(11460, 11520)]
        pieces = cut_recall_pieces(zone, preds)
        covered = [
            (p.interval.start, p.interval.stop) for p in pieces if p.covered
        ]
        assert covered == [(11100, 11160), (11220, 11400)]
        # Partition of the event, no overlaps.
        assert sum(p.interval.duration for p in pieces) == pytest.approx(600.0)
        edges = sorted((p.interval.start, p.interval.stop) for p in pieces)
        for (s1, e1), (s2, e2) in zip(edges, edges[1:]):
            assert e1 == s2
        # The gap between the first two predictions splits at its midpoint
        # 3:06:30 with pivots on either side.
        boundary = {p.interval.start for p in pieces} | {
            p.interval.stop for p in pieces
        }
        assert 11190 in boundary
        left = [p for p in pieces if not p.covered and p.interval.stop == 11190]
        right = [p for p in pieces if not p.covered and p.interval.start == 11190]
        assert left and all(p.t_pivot == 11160 for p in left)
        assert right and all(p.t_pivot == 11220 for p in right)

    def test_integration_values(self):
        zone = AffiliationZone(Interval(0, 90), Interval(20, 30))
        covered = cut_recall_pieces(zone, [Interval(20, 23)])[0]
        assert covered.covered
        assert integrate_recall_piece(covered, zone) == 3.0
        # pivot 40, event midpoint 25: 10 * (1 - (15 + 15)/90) in total
        pieces = cut_recall_pieces(zone, [Interval(40, 41)])
        total = sum(integrate_recall_piece(p, zone) for p in pieces)
        assert total == pytest.approx(20 / 3)

    def test_empty_fragments_violate_contract(self):
        with pytest.raises(ContractViolation):
            cut_recall_pieces(ZONE, [])

    def test_pivot_at_survival_zero_gives_zero_area(self):
        # Event hugging the left border, prediction at the far right border:
        # every event point sees the pivot at its own maximum distance.
        zone = AffiliationZone(Interval(0, 10), Interval(0, 1))
        pieces = cut_recall_pieces(zone, [Interval(9.999999, 10)])
        total = sum(integrate_recall_piece(p, zone) for p in pieces)
        assert total == pytest.approx(0.0, abs=1e-5)


def _random_zone_and_fragments(rng):
    lo = rng.uniform(-100, 100)
    length = rng.uniform(0.5, 300.0)
    a = rng.uniform(lo, lo + length * 0.98)
    b = rng.uniform(a + length * 0.01, lo + length)
    zone = AffiliationZone(Interval(lo, lo + length), Interval(a, b))
    k = int(rng.integers(0, 6))
    pts = np.sort(rng.uniform(lo, lo + length, 2 * k))
    frags = [
        Interval(float(s), float(e)) for s, e in zip(pts[::2], pts[1::2]) if e > s
    ]
    return zone, frags


def test_piece_sums_match_grid_integration():
    rng = np.random.default_rng(20240817)
    cfg = OracleConfig()
    checked = 0
    for _ in range(40):
        zone, frags = _random_zone_and_fragments(rng)
        if not frags:
            continue
        area = 0.0
        width = 0.0
        for f in frags:
            width += f.duration
            for piece in cut_precision_pieces(f, zone):
                area += integrate_precision_piece(piece, zone)
        p_closed = area / width
        r_closed = sum(
            integrate_recall_piece(p, zone) for p in cut_recall_pieces(zone, frags)
        ) / zone.event.duration
        p_grid, r_grid = probabilities_numeric(zone, frags, cfg)
        assert math.isclose(p_closed, p_grid, rel_tol=1e-6, abs_tol=1e-6)
        assert math.isclose(r_closed, r_grid, rel_tol=1e-6, abs_tol=1e-6)
        assert 0.0 <= p_closed <= 1.0
        assert sum(
            p.interval.duration for p in cut_recall_pieces(zone, frags)
        ) == pytest.approx(zone.event.duration, rel=1e-12)
        checked += 1
    assert checked >= 20


def test_survival_matches_monte_carlo():
    cfg = OracleConfig(mc_samples=400_000, rng_seed=11)
    for d in (5.0, 10.0, 25.0, 45.0):
        est = survival_precision_mc(ZONE, d, cfg)
        exact = survival_precision(ZONE, d)
        assert abs(est.value - exact) < 3 * max(est.stderr, 1e-6)
