"""Classical sample-level precision/recall and adversarial generators.

The adversary generator games event-counting metrics: given a trivial
anomalous region (one identifiable by a single threshold rule), it packs
the maximum number of predicted events inside it by alternating labels,
and marks every other sample positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int


@dataclass(frozen=True)
class TrivialRule:
    """Threshold predicate on the raw series, e.g. "below 1250"."""

    threshold: float
    direction: str  # "below" | "above"

    def __post_init__(self) -> None:
        if self.direction not in ("below", "above"):
            raise InputError(f"unknown rule direction {self.direction!r}")


def confusion_counts(gt_labels, pred_labels) -> ConfusionCounts:
    gt = np.asarray(gt_labels).astype(bool)
    pred = np.asarray(pred_labels).astype(bool)
    if gt.shape != pred.shape:
        raise InputError(
            f"label length mismatch: {gt.size} ground truth vs {pred.size} predicted"
        )
    return ConfusionCounts(
        tp=int(np.sum(pred & gt)),
        fp=int(np.sum(pred & ~gt)),
        fn=int(np.sum(~pred & gt)),
        tn=int(np.sum(~pred & ~gt)),
    )


def classical_precision_recall(gt_labels, pred_labels):
    """Sample-level precision and recall; None where the denominator is
    empty (no positive prediction / no positive ground truth)."""
    c = confusion_counts(gt_labels, pred_labels)
    precision = c.tp / (c.tp + c.fp) if c.tp + c.fp else None
    recall = c.tp / (c.tp + c.fn) if c.tp + c.fn else None
    return precision, recall


def trivial_predictions(values, rule: TrivialRule) -> list[int]:
    vals = np.asarray(values, dtype=float)
    if rule.direction == "below":
        mask = vals < rule.threshold
    else:
        mask = vals > rule.threshold
    return mask.astype(int).tolist()


def adversary_predictions(trivial_labels) -> list[int]:
    """Alternate labels inside each trivial run, mark everything else 1.

    Alternation starts positive at the first sample of a run, which packs
    ceil(L/2) predicted events into a run of length L.
    """
    labels = np.asarray(trivial_labels).astype(int)
    if not labels.any():
        raise InputError("adversary needs at least one trivial event to anchor on")
    out = np.ones_like(labels)
    for start, stop in _runs(labels):
        width = stop - start
        pattern = np.zeros(width, dtype=int)
        pattern[::2] = 1
        out[start:stop] = pattern
    return out.tolist()


def point_adjust_adversary_predictions(trivial_labels, n_extra: int = 10) -> list[int]:
    """Variant aimed at metrics that extend any hit to the whole event.

    Keeps the trivial event intact and scatters ``n_extra`` short
    predictions (each a tenth of the trivial mass divided by ``n_extra``,
    at least one sample) evenly over the remaining samples.
    """
    labels = np.asarray(trivial_labels).astype(int)
    if not labels.any():
        raise InputError("adversary needs at least one trivial event to anchor on")
    if n_extra < 1:
        raise InputError("n_extra must be at least 1")
    total = int(labels.sum())
    burst = max(1, round(total / (10 * n_extra)))
    out = labels.copy()
    rest = np.flatnonzero(labels == 0)
    if rest.size:
        step = rest.size / n_extra
        for k in range(n_extra):
            anchor = int(k * step)
            out[rest[anchor : anchor + burst]] = 1
    return out.tolist()


def _runs(labels: np.ndarray):
    padded = np.concatenate([[0], labels, [0]])
    edges = np.diff(padded)
    return zip(np.flatnonzero(edges == 1), np.flatnonzero(edges == -1))
