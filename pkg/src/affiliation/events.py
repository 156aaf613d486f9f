"""Interval and event-series model, label conversion, and zone partitioning.

Anomalous events are half-open time spans ``[start, stop)`` measured in
seconds.  For evaluation, the timeline is partitioned into *affiliation
zones*, one per ground-truth event: every instant belongs to the zone of
its closest ground-truth event, so the boundary between two consecutive
events sits at the midpoint of the gap separating them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

GROUND_TRUTH = "ground-truth"
PREDICTION = "prediction"


@dataclass(frozen=True, order=True)
class Interval:
    """Half-open time span ``[start, stop)``; always non-empty."""

    start: float
    stop: float

    def __post_init__(self) -> None:
        if not self.stop > self.start:
            raise InputError(
                f"interval [{self.start}, {self.stop}) is empty or reversed"
            )

    @property
    def duration(self) -> float:
        return self.stop - self.start

    @property
    def center(self) -> float:
        return 0.5 * (self.start + self.stop)

    def contains(self, x: float) -> bool:
        """Membership in the closure ``[start, stop]`` (distance semantics)."""
        return self.start <= x <= self.stop

    def intersect(self, other: Interval) -> Interval | None:
        s = max(self.start, other.start)
        e = min(self.stop, other.stop)
        return Interval(s, e) if e > s else None

    def shift(self, delta: float) -> Interval:
        return Interval(self.start + delta, self.stop + delta)


@dataclass(frozen=True)
class EventSeries:
    """Ordered, pairwise-disjoint events with a role tag.

    Predicted series may be empty and may contain touching events (they
    behave exactly like their merged union).  A ground-truth series must be
    non-empty and must keep a positive gap between consecutive events;
    touching ground-truth events are an upstream labeling ambiguity and are
    rejected rather than silently merged.
    """

    events: tuple[Interval, ...]
    role: str = PREDICTION

    def __post_init__(self) -> None:
        if self.role not in (GROUND_TRUTH, PREDICTION):
            raise InputError(f"unknown series role {self.role!r}")
        if self.role == GROUND_TRUTH and not self.events:
            raise InputError("ground-truth series must contain at least one event")
        for prev, cur in zip(self.events, self.events[1:]):
            if cur.start < prev.stop:
                raise InputError(
                    f"events [{prev.start}, {prev.stop}) and "
                    f"[{cur.start}, {cur.stop}) overlap"
                )
            if self.role == GROUND_TRUTH and cur.start == prev.stop:
                raise InputError(
                    f"ground-truth events touch at t={cur.start}; "
                    "merge them upstream"
                )

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[float, float]], role: str = PREDICTION
    ) -> EventSeries:
        events = tuple(sorted(Interval(s, e) for s, e in pairs))
        return cls(events, role)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    @property
    def is_empty(self) -> bool:
        return not self.events

    @property
    def total_duration(self) -> float:
        return sum(ev.duration for ev in self.events)

    def shift(self, delta: float) -> EventSeries:
        return EventSeries(tuple(ev.shift(delta) for ev in self.events), self.role)


class LabeledSeries:
    """Binary labels over N half-open sample cells ``[t(i), t(i+1))``.

    ``timestamps`` holds the N+1 cell boundaries; sample ``i`` spans
    ``[timestamps[i], timestamps[i+1])``.
    """

    __slots__ = ("labels", "timestamps")

    def __init__(self, labels, timestamps) -> None:
        lab = np.asarray(labels)
        if lab.ndim != 1 or lab.size == 0:
            raise InputError("labels must be a non-empty 1-d sequence")
        if not np.isin(lab, (0, 1)).all():
            bad = int(np.flatnonzero(~np.isin(lab, (0, 1)))[0])
            raise InputError(f"label at index {bad} is not 0 or 1")
        ts = np.asarray(timestamps, dtype=float)
        if ts.ndim != 1 or ts.size != lab.size + 1:
            raise InputError(
                f"expected {lab.size + 1} timestamps for {lab.size} labels, "
                f"got {ts.size}"
            )
        if not (np.diff(ts) > 0).all():
            bad = int(np.flatnonzero(np.diff(ts) <= 0)[0])
            raise InputError(f"timestamps not strictly increasing at index {bad + 1}")
        self.labels = lab.astype(np.int8)
        self.timestamps = ts

    @classmethod
    def from_samples(cls, labels, times=None, t_last: float | None = None) -> LabeledSeries:
        """Build from per-sample times, choosing the final cell boundary.

        Integer sample indices (``times=None``) are treated as seconds with
        unit spacing.  For explicit times the default final boundary
        extrapolates the last observed spacing; pass ``t_last`` to override
        (needed when the tail spacing is not representative).
        """
        n = len(labels)
        if times is None:
            ts = np.arange(n + 1, dtype=float)
            if t_last is not None:
                ts[-1] = t_last
        else:
            times = np.asarray(times, dtype=float)
            if times.size != n:
                raise InputError(f"expected {n} sample times, got {times.size}")
            if t_last is None:
                if n >= 2:
                    t_last = times[-1] + (times[-1] - times[-2])
                else:
                    t_last = times[-1] + 1.0
            ts = np.concatenate([times, [t_last]])
        return cls(labels, ts)

    def __len__(self) -> int:
        return int(self.labels.size)

    @property
    def range(self) -> Interval:
        return Interval(float(self.timestamps[0]), float(self.timestamps[-1]))


@dataclass(frozen=True)
class AffiliationZone:
    """One ground-truth event with its affiliation zone and border distances.

    ``m`` and ``M`` are the shortest and largest distance from the event to
    the two zone borders; ``event.duration + m + M == zone.duration``.
    """

    zone: Interval
    event: Interval
    index: int = 0
    m: float = field(init=False)
    M: float = field(init=False)

    def __post_init__(self) -> None:
        if self.event.start < self.zone.start or self.event.stop > self.zone.stop:
            raise InputError(
                f"event [{self.event.start}, {self.event.stop}) not inside "
                f"zone [{self.zone.start}, {self.zone.stop})"
            )
        before = self.event.start - self.zone.start
        after = self.zone.stop - self.event.stop
        object.__setattr__(self, "m", min(before, after))
        object.__setattr__(self, "M", max(before, after))


def events_from_labels(series: LabeledSeries, role: str = PREDICTION) -> EventSeries:
    """Convert a binary label vector into events.

    Every maximal run of consecutive 1s at indices ``i..k`` becomes the
    interval ``[t(i), t(k+1))``; an all-zero vector yields an empty series
    (invalid for the ground-truth role).
    """
    padded = np.concatenate([[0], series.labels, [0]])
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    stops = np.flatnonzero(edges == -1)
    ts = series.timestamps
    events = tuple(
        Interval(float(ts[i]), float(ts[k])) for i, k in zip(starts, stops)
    )
    return EventSeries(events, role)


def rasterize(events: EventSeries | Sequence[Interval], timestamps) -> np.ndarray:
    """Binary label for each cell ``[t(i), t(i+1))``: 1 iff its midpoint is
    covered by some event."""
    ts = np.asarray(timestamps, dtype=float)
    mids = 0.5 * (ts[:-1] + ts[1:])
    labels = np.zeros(mids.size, dtype=np.int8)
    for ev in events:
        labels |= (mids >= ev.start) & (mids < ev.stop)
    return labels


def affiliation_zones(gt: EventSeries, rng: Interval) -> list[AffiliationZone]:
    """Partition ``rng`` into one zone per ground-truth event.

    The boundary between consecutive events is the midpoint of the gap
    between them; the first zone starts at ``rng.start`` and the last ends
    at ``rng.stop``.  Boundaries are half-open, so an instant exactly on a
    midpoint belongs to the zone on its right.
    """
    if gt.is_empty:
        raise InputError("cannot build affiliation zones from an empty ground truth")
    events = gt.events
    if events[0].start < rng.start or events[-1].stop > rng.stop:
        raise InputError(
            f"ground-truth events must lie inside the evaluation range "
            f"[{rng.start}, {rng.stop})"
        )
    for prev, cur in zip(events, events[1:]):
        if cur.start <= prev.stop:
            raise InputError(
                f"ground-truth events [{prev.start}, {prev.stop}) and "
                f"[{cur.start}, {cur.stop}) overlap or touch"
            )
    bounds = [rng.start]
    bounds += [0.5 * (prev.stop + cur.start) for prev, cur in zip(events, events[1:])]
    bounds.append(rng.stop)
    return [
        AffiliationZone(Interval(lo, hi), ev, index=j)
        for j, (lo, hi, ev) in enumerate(zip(bounds, bounds[1:], events))
    ]


def affiliate(
    pred: EventSeries, zones: Sequence[AffiliationZone]
) -> list[list[Interval]]:
    """Clip predicted events to each zone.

    A predicted interval straddling a zone boundary is split; parts outside
    the overall range are dropped, so the union of all fragments equals the
    predictions intersected with the range.
    """
    fragments: list[list[Interval]] = [[] for _ in zones]
    if pred.is_empty:
        return fragments
    events = pred.events
    i = 0
    for k, z in enumerate(zones):
        lo, hi = z.zone.start, z.zone.stop
        # Skip predictions that end before this zone.
        while i < len(events) and events[i].stop <= lo:
            i += 1
        j = i
        while j < len(events) and events[j].start < hi:
            clipped = events[j].intersect(z.zone)
            if clipped is not None:
                fragments[k].append(clipped)
            j += 1
        # Re-examine the last overlapping prediction for the next zone, as
        # it may straddle the boundary.
        i = max(i, j - 1)
    return fragments
