"""Synthetic breathing waveforms and transcripts with exact ground truth.

The waveform generator plants inspiration events — fast raised-cosine rises
of ~225 ms — at a fixed cycle period, with slow quasi-linear exhalation
decays between them, plus optional linear drift and Gaussian noise. The
planted rise intervals are returned as ground truth.

Two pieces of scaffolding around the planted events exist purely to give
the zero-phase band-pass detector honest working conditions at the record
edges, where its response to any feature is suppressed or ringing-distorted:

* a warm-up breath (flat floor, one unplanted rise, a long decay into the
  first planted event) supplies the left prominence base that the first
  planted event's minimum otherwise lacks;
* when enough room remains after the last planted event, the decay settles
  to the floor and turns into a slow sub-threshold lead-out rise, giving the
  last planted maximum a genuine valley on its right.

Both features are sub-threshold by construction at the default breathing
rate: the warm-up rise sits too close to the record start to survive the
filter's startup suppression, and the lead-out rise is too slow to form a
prominent extremum. Neither is part of the returned ground truth.

The transcript generator lays words over the regions between events: fixed
~80 ms intra-region gaps (short enough never to look like a pause), word
lengths flexed around ~300 ms so that words exactly abut both ends of every
event — each event thus coincides with one long inter-word gap. A
configurable fraction of events gets the preceding word punctuation-
terminated (a grammatical stop); spurious stops are sprinkled over
intra-region gaps at a configurable rate.
"""

from __future__ import annotations

import math

import numpy as np

from .types import (
    IeInterval,
    IeSource,
    SynthConfig,
    TimedWord,
    Transcript,
    ValidationError,
    seconds_to_index,
)
from .types import Waveform

_HIGH = 1.0
_LOW = -1.0


def _rise_ramp(u):
    """Raised-cosine ramp from 0 at u=0 to 1 at u=1, strictly increasing."""
    return (1.0 - np.cos(np.pi * u)) / 2.0


def synth_breathing(cfg: SynthConfig) -> tuple[Waveform, list[IeInterval]]:
    """Generate a breathing waveform and its planted-event ground truth.

    Deterministic given ``cfg.seed``. Every planted interval is a strictly
    rising segment of the noiseless waveform. Requires room for at least two
    breathing cycles.
    """
    rate = cfg.speech_resp_rate_hz
    period = 1.0 / rate
    if cfg.duration_s < 2.0 * period:
        raise ValidationError(
            f"duration_s={cfg.duration_s} is too short for two breathing "
            f"cycles at {rate} Hz (need >= {2.0 * period})",
            field="duration_s",
        )

    rng = np.random.default_rng(cfg.seed)
    d_mean = cfg.ie_duration_mean_s
    jitter = cfg.ie_duration_jitter_s
    first_start = 0.9 * period
    warmup_flat_end = max(0.1 * period, min(1.0, 0.2 * period))
    warmup_rise_end = warmup_flat_end + d_mean

    events: list[tuple[float, float]] = []
    k = 0
    while True:
        s = first_start + k * period
        d = d_mean + rng.uniform(-jitter, jitter)
        if s + d > cfg.duration_s:
            break
        events.append((s, s + d))
        k += 1

    fs = cfg.sample_rate_hz
    n = seconds_to_index(cfg.duration_s, fs)
    times = np.arange(n) / fs
    x = np.empty(n)
    natural_fall = period - d_mean
    span = _HIGH - _LOW

    for i, t in enumerate(times):
        val = None
        for s, e in events:
            if s <= t <= e:
                val = _LOW + span * _rise_ramp((t - s) / (e - s))
                break
        if val is not None:
            x[i] = val
            continue
        if t < warmup_flat_end:
            val = _LOW
        elif t < warmup_rise_end:
            val = _LOW + span * _rise_ramp((t - warmup_flat_end) / d_mean)
        elif not events or t < events[0][0]:
            fall_len = (events[0][0] if events else cfg.duration_s) - warmup_rise_end
            val = _HIGH - span * (t - warmup_rise_end) / fall_len
        else:
            prev_end, next_start = events[0][1], cfg.duration_s
            for s, e in events:
                if e <= t:
                    prev_end = e
                if s >= t:
                    next_start = s
                    break
            if next_start == cfg.duration_s:
                avail = cfg.duration_s - prev_end
                if avail >= 4.0:
                    fall_len = min(natural_fall, 0.65 * avail)
                    if t <= prev_end + fall_len:
                        val = _HIGH - span * (t - prev_end) / fall_len
                    else:
                        u = (t - prev_end - fall_len) / (avail - fall_len)
                        val = _LOW + 0.75 * span * _rise_ramp(u)
                else:
                    u = min(1.0, (t - prev_end) / natural_fall)
                    val = _HIGH - span * u
            else:
                val = _HIGH - span * (t - prev_end) / (next_start - prev_end)
        x[i] = val

    x = x + cfg.drift_per_s * times + rng.normal(0.0, cfg.noise_sigma, n)
    wave = Waveform(samples=x, sample_rate_hz=fs, label="synthetic")
    truth = [IeInterval(s, e, IeSource.SYNTHETIC) for s, e in events]
    return wave, truth


def _regions(truth: list[IeInterval], duration_s: float) -> list[tuple[float, float]]:
    """Speech regions: the spans between events (and before/after them)."""
    bounds = [0.0]
    for iv in truth:
        bounds.extend((iv.start_s, iv.end_s))
    bounds.append(duration_s)
    return [(bounds[i], bounds[i + 1]) for i in range(0, len(bounds), 2)]


def synth_transcript(truth: list[IeInterval], cfg: SynthConfig) -> Transcript:
    """Build a word-aligned transcript consistent with the planted events.

    Words fill every region between events with fixed ``cfg.word_gap_s``
    gaps; the word length per region is chosen so the first word starts at
    the region start and the last ends exactly at the region end, making
    each event's span exactly one inter-word gap. With probability
    ``cfg.grammatical_fraction`` an event's preceding word is terminated
    with '.', turning the event into a grammatical stop; intra-region gaps
    independently receive a spurious stop with probability
    ``cfg.spurious_stop_rate``. Deterministic given ``cfg.seed`` (the random
    stream is separate from the waveform generator's).
    """
    for a, b in zip(truth, truth[1:]):
        if b.start_s < a.end_s:
            raise ValidationError("truth intervals must be sorted and disjoint", field="truth")
    if truth and (truth[0].start_s < 0 or truth[-1].end_s > cfg.duration_s):
        raise ValidationError(
            "truth intervals must lie inside [0, duration_s]", field="truth"
        )

    rng = np.random.default_rng([cfg.seed, 1])
    grammatical = [bool(rng.random() < cfg.grammatical_fraction) for _ in truth]

    nominal = cfg.word_duration_s + cfg.word_gap_s
    gap = cfg.word_gap_s
    words: list[list] = []  # mutable [text, start, end]
    last_word_of_region: list[int | None] = []
    first_word_of_region: list[int | None] = []
    intra_gap_word_idx: list[int] = []

    for rs, re in _regions(truth, cfg.duration_s):
        length = re - rs
        if length <= 0:
            first_word_of_region.append(None)
            last_word_of_region.append(None)
            continue
        n_words = max(1, math.ceil(length / nominal))
        # keep gaps exact, flex the word length to land on both endpoints
        word_len = (length - (n_words - 1) * gap) / n_words
        first_word_of_region.append(len(words))
        for i in range(n_words):
            start = rs + i * (word_len + gap)
            end = re if i == n_words - 1 else start + word_len
            words.append([f"w{len(words):03d}", start, end])
            if i < n_words - 1:
                intra_gap_word_idx.append(len(words) - 1)
        last_word_of_region.append(len(words) - 1)

    for k in range(len(truth)):
        prev_idx = last_word_of_region[k]
        next_idx = first_word_of_region[k + 1]
        if grammatical[k] and prev_idx is not None and next_idx is not None:
            words[prev_idx][0] += "."

    for idx in intra_gap_word_idx:
        if rng.random() < cfg.spurious_stop_rate and not words[idx][0].endswith("."):
            words[idx][0] += "."

    return Transcript(
        words=tuple(TimedWord(text=t, start_s=s, end_s=e) for t, s, e in words),
        audio_duration_s=cfg.duration_s,
    )
