"""Scoring of estimated event intervals against ground truth.

The protocol is interval-overlap based and truth-centric:

* every ground-truth event overlapped by at least one estimate is one true
  positive, otherwise one false negative (so tp + fn = |truth| always);
* an estimate overlapping no truth event at all is one false positive;
* each interior gap — the open region between two consecutive truth events —
  contributes one true negative when no false-positive estimate reaches into
  it. Regions before the first and after the last truth event are outside
  the gap universe by default.

"Overlap" means closed-interval intersection, shared endpoints included; an
optional slack widens the tolerance symmetrically. An estimate that overlaps
a truth event is never additionally counted as a false positive, and an
estimate spanning several truth events marks each of them detected while
being counted once itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .types import IeInterval, ValidationError


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    def __post_init__(self):
        for name in ("tp", "tn", "fp", "fn"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValidationError(
                    f"{name} must be a non-negative integer", field=name
                )

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            tp=self.tp + other.tp,
            tn=self.tn + other.tn,
            fp=self.fp + other.fp,
            fn=self.fn + other.fn,
        )


@dataclass(frozen=True)
class MetricSet:
    """Sensitivity, specificity and F1; a metric whose denominator is zero
    is absent (None) rather than zero or NaN."""

    sensitivity: float | None
    specificity: float | None
    f1: float | None


@dataclass(frozen=True)
class DurationHistogram:
    bin_width_s: float
    bin_counts: tuple[int, ...]
    bin_start_s: float = 0.0

    def mode_bin(self) -> int | None:
        """Index of the fullest bin (earliest on ties); None when empty."""
        if not self.bin_counts:
            return None
        best = max(self.bin_counts)
        return self.bin_counts.index(best)


def _check_sorted_disjoint(intervals: list[IeInterval], what: str) -> None:
    for a, b in zip(intervals, intervals[1:]):
        if b.start_s < a.start_s:
            raise ValidationError(f"{what} intervals must be sorted by start", field=what)
        if b.start_s < a.end_s:
            raise ValidationError(
                f"{what} intervals must be disjoint "
                f"([{a.start_s}, {a.end_s}] overlaps [{b.start_s}, {b.end_s}])",
                field=what,
            )


def _overlaps(a: IeInterval, b: IeInterval, slack: float) -> bool:
    return a.start_s <= b.end_s + slack and a.end_s >= b.start_s - slack


def score(
    estimates: list[IeInterval],
    truth: list[IeInterval],
    overlap_slack_s: float = 0.0,
    include_edge_gaps: bool = False,
) -> ConfusionCounts:
    """Confusion counts of ``estimates`` against ``truth``.

    Both lists must be sorted by start and internally disjoint.
    ``include_edge_gaps`` adds the regions before the first and after the
    last truth event to the true-negative universe.
    """
    if overlap_slack_s < 0:
        raise ValidationError("overlap_slack_s must be >= 0", field="overlap_slack_s")
    _check_sorted_disjoint(estimates, "estimates")
    _check_sorted_disjoint(truth, "truth")

    matched_truth = [False] * len(truth)
    est_is_fp = [True] * len(estimates)
    for j, est in enumerate(estimates):
        for i, tru in enumerate(truth):
            if _overlaps(est, tru, overlap_slack_s):
                matched_truth[i] = True
                est_is_fp[j] = False

    tp = sum(matched_truth)
    fn = len(truth) - tp
    fp = sum(est_is_fp)

    gaps: list[tuple[float, float]] = [
        (a.end_s, b.start_s) for a, b in zip(truth, truth[1:])
    ]
    if include_edge_gaps and truth:
        gaps.insert(0, (-math.inf, truth[0].start_s))
        gaps.append((truth[-1].end_s, math.inf))

    tn = 0
    for lo, hi in gaps:
        spoiled = any(
            est_is_fp[j] and est.end_s > lo and est.start_s < hi
            for j, est in enumerate(estimates)
        )
        if not spoiled:
            tn += 1

    return ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn)


def metrics(counts: ConfusionCounts) -> MetricSet:
    def ratio(num: int, den: int) -> float | None:
        return num / den if den > 0 else None

    return MetricSet(
        sensitivity=ratio(counts.tp, counts.tp + counts.fn),
        specificity=ratio(counts.tn, counts.tn + counts.fp),
        f1=ratio(2 * counts.tp, 2 * counts.tp + counts.fp + counts.fn),
    )


def format_metric(value: float | None) -> str:
    """Two-decimal display form used in reports; absent values print n/a."""
    return "n/a" if value is None else f"{value:.2f}"


def duration_histogram(
    intervals: list[IeInterval], bin_width_s: float
) -> DurationHistogram:
    """Histogram of interval durations in fixed-width bins from 0.

    Duration d falls into bin floor(d / width), i.e. bin k covers
    [k*width, (k+1)*width). An empty input yields a zero-bin histogram.
    """
    if bin_width_s <= 0:
        raise ValidationError("bin_width_s must be positive", field="bin_width_s")
    if not intervals:
        return DurationHistogram(bin_width_s=bin_width_s, bin_counts=())
    idx = [int(math.floor(iv.duration_s / bin_width_s)) for iv in intervals]
    counts = [0] * (max(idx) + 1)
    for k in idx:
        counts[k] += 1
    return DurationHistogram(bin_width_s=bin_width_s, bin_counts=tuple(counts))
