"""Selection of alternating minima/maxima by normalized topographic prominence."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .types import ValidationError, Waveform


class ExtremumKind(str, Enum):
    MINIMUM = "minimum"
    MAXIMUM = "maximum"


@dataclass(frozen=True)
class Extremum:
    index: int
    time_s: float
    kind: ExtremumKind
    value: float
    prominence_normalized: float


def _plateau_candidates(x: np.ndarray) -> list[tuple[int, int]]:
    """Interior extremum candidates as (middle index, +1 max / -1 min).

    Runs of equal samples are collapsed; a run is a candidate when both
    neighbouring runs lie on the same side. The run's middle sample (ties to
    the left) represents it. Boundary runs are never candidates.
    """
    n = x.size
    run_starts = [0]
    for j in range(1, n):
        if x[j] != x[j - 1]:
            run_starts.append(j)
    run_starts.append(n)

    out: list[tuple[int, int]] = []
    for r in range(1, len(run_starts) - 2):
        s, e = run_starts[r], run_starts[r + 1] - 1
        v = x[s]
        prev = x[s - 1]
        nxt = x[e + 1]
        mid = (s + e) // 2
        if v > prev and v > nxt:
            out.append((mid, +1))
        elif v < prev and v < nxt:
            out.append((mid, -1))
    return out


def _prominence(x: np.ndarray, peak: int) -> float:
    """Topographic prominence of a local maximum of ``x`` at ``peak``.

    Walk outward on both sides until a sample strictly higher than the peak
    (or the signal border) is met; the prominence is the peak height above
    the higher of the two lowest points seen on the walks.
    """
    v = x[peak]

    i = peak - 1
    left_base = v
    while i >= 0 and x[i] <= v:
        if x[i] < left_base:
            left_base = x[i]
        i -= 1

    i = peak + 1
    right_base = v
    n = x.size
    while i < n and x[i] <= v:
        if x[i] < right_base:
            right_base = x[i]
        i += 1

    return v - max(left_base, right_base)


def find_extrema(
    signal: Waveform, min_separation_s: float, prominence_threshold: float
) -> list[Extremum]:
    """Alternating extrema with range-normalized prominence >= threshold.

    Candidates are every interior local extremum; each one's topographic
    prominence (minima via sign flip) is normalized by the signal's global
    range. Candidates at or above the threshold are accepted greedily in
    order of descending prominence, rejecting any candidate closer than
    ``min_separation_s`` to an already accepted extremum of the same kind.
    Finally a left-to-right sweep enforces strict min/max alternation,
    keeping the more extreme of consecutive same-kind survivors (earlier one
    on ties).

    A constant signal yields an empty list. Normalized prominence is scale-
    and offset-invariant, so ``find_extrema(c*x + d)`` with c > 0 selects
    the same indices as ``find_extrema(x)``.
    """
    if signal.n_samples < 3:
        raise ValidationError("need at least 3 samples to find extrema", field="samples")
    if min_separation_s < 0:
        raise ValidationError("min_separation_s must be >= 0", field="min_separation_s")
    if not (0 < prominence_threshold <= 1):
        raise ValidationError(
            "prominence_threshold must lie in (0, 1]", field="prominence_threshold"
        )

    x = signal.samples
    fs = signal.sample_rate_hz
    value_range = float(np.max(x) - np.min(x))
    if value_range == 0.0:
        return []

    neg = -x
    scored: list[tuple[int, int, float]] = []
    for idx, kind in _plateau_candidates(x):
        raw = _prominence(x, idx) if kind > 0 else _prominence(neg, idx)
        pn = raw / value_range
        if pn >= prominence_threshold:
            scored.append((idx, kind, pn))

    # highest prominence first; index breaks ties deterministically
    scored.sort(key=lambda c: (-c[2], c[0]))
    accepted: list[tuple[int, int, float]] = []
    min_sep_samples = min_separation_s * fs
    for idx, kind, pn in scored:
        if any(k == kind and abs(idx - i) < min_sep_samples for i, k, _ in accepted):
            continue
        accepted.append((idx, kind, pn))
    accepted.sort(key=lambda c: c[0])

    alternating: list[tuple[int, int, float]] = []
    for cand in accepted:
        if alternating and alternating[-1][1] == cand[1]:
            prev = alternating[-1]
            more_extreme = (
                x[cand[0]] > x[prev[0]] if cand[1] > 0 else x[cand[0]] < x[prev[0]]
            )
            if more_extreme:
                alternating[-1] = cand
        else:
            alternating.append(cand)

    return [
        Extremum(
            index=idx,
            time_s=idx / fs,
            kind=ExtremumKind.MAXIMUM if kind > 0 else ExtremumKind.MINIMUM,
            value=float(x[idx]),
            prominence_normalized=pn,
        )
        for idx, kind, pn in alternating
    ]
