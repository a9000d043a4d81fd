"""Core value types shared by every processing stage.

All types validate their invariants at construction time and are immutable
afterwards, so instances can be freely shared between threads or processes.
Times are seconds at module boundaries; conversion to sample indices uses
round-half-up (see :func:`seconds_to_index`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class ValidationError(ValueError):
    """Raised when a value violates a type invariant.

    ``field`` names the offending field so callers (and the CLI) can point
    at the exact problem.
    """

    def __init__(self, message: str, *, field: str = ""):
        super().__init__(message)
        self.field = field


def _require(cond: bool, message: str, field: str) -> None:
    if not cond:
        raise ValidationError(message, field=field)


def seconds_to_index(t_s: float, sample_rate_hz: float) -> int:
    """Convert a time in seconds to the nearest sample index, half up."""
    return int(math.floor(t_s * sample_rate_hz + 0.5))


class IeSource(str, Enum):
    """Provenance tag for a detected inspiration event."""

    BELT = "belt"
    VRB = "vrb"
    VRBOLA = "vrbola"
    ASR_WORD = "asr_word"
    ASR_PUNCT = "asr_punct"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True, eq=False)
class Waveform:
    """Uniformly sampled real-valued signal.

    Parameters
    ----------
    samples : array_like
        Signal values, arbitrary units. At least one sample, all finite.
    sample_rate_hz : float
        Sampling rate, strictly positive.
    label : str
        Free-form identifier carried through processing.
    """

    samples: np.ndarray
    sample_rate_hz: float
    label: str = ""

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        _require(arr.ndim == 1, "samples must be one-dimensional", "samples")
        _require(arr.size >= 1, "waveform needs at least one sample", "samples")
        _require(bool(np.all(np.isfinite(arr))), "samples must all be finite", "samples")
        _require(
            math.isfinite(self.sample_rate_hz) and self.sample_rate_hz > 0,
            "sample_rate_hz must be a positive finite number",
            "sample_rate_hz",
        )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    @property
    def n_samples(self) -> int:
        return int(self.samples.size)

    @property
    def duration_s(self) -> float:
        return self.n_samples / self.sample_rate_hz

    def times_s(self) -> np.ndarray:
        return np.arange(self.n_samples) / self.sample_rate_hz


@dataclass(frozen=True, eq=False)
class FrameSequence:
    """Ordered framewise signal estimates with frame length K and hop S."""

    frames: np.ndarray
    frame_len_K: int
    hop_S: int
    sample_rate_hz: float

    def __post_init__(self):
        arr = np.asarray(self.frames, dtype=np.float64)
        _require(arr.ndim == 2, "frames must be a list of equal-length vectors", "frames")
        _require(arr.shape[0] >= 1, "frame sequence must contain at least one frame", "frames")
        _require(
            arr.shape[1] == self.frame_len_K,
            f"every frame must have exactly frame_len_K={self.frame_len_K} entries, got {arr.shape[1]}",
            "frames",
        )
        _require(self.frame_len_K > 0, "frame_len_K must be positive", "frame_len_K")
        _require(
            0 < self.hop_S <= self.frame_len_K,
            "hop_S must satisfy 0 < hop_S <= frame_len_K",
            "hop_S",
        )
        _require(bool(np.all(np.isfinite(arr))), "frame entries must all be finite", "frames")
        _require(
            math.isfinite(self.sample_rate_hz) and self.sample_rate_hz > 0,
            "sample_rate_hz must be a positive finite number",
            "sample_rate_hz",
        )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "frames", arr)

    @property
    def n_frames(self) -> int:
        return int(self.frames.shape[0])


@dataclass(frozen=True)
class IeInterval:
    """One inspiration event as a closed time interval with a source tag."""

    start_s: float
    end_s: float
    source: IeSource = IeSource.BELT

    def __post_init__(self):
        _require(
            math.isfinite(self.start_s) and math.isfinite(self.end_s),
            "interval bounds must be finite",
            "start_s",
        )
        _require(
            self.start_s < self.end_s,
            f"start_s must be < end_s (got [{self.start_s}, {self.end_s}])",
            "start_s",
        )
        object.__setattr__(self, "source", IeSource(self.source))

    @property
    def duration_s(self) -> float:
        return self.end_s - self.start_s


@dataclass(frozen=True)
class DetectorConfig:
    """Parameters of the waveform inspiration-event detector."""

    filter_order: int = 3
    band_low_hz: float = 0.08
    band_high_hz: float = 1.0
    min_separation_s: float = 1.0
    prominence_threshold: float = 0.8
    pause_threshold_s: float = 0.150
    invert_orientation: bool = False

    def __post_init__(self):
        _require(
            isinstance(self.filter_order, int) and self.filter_order >= 1,
            "filter_order must be an integer >= 1",
            "filter_order",
        )
        _require(self.band_low_hz > 0, "band_low_hz must be positive", "band_low_hz")
        _require(
            self.band_high_hz > self.band_low_hz,
            "band_high_hz must exceed band_low_hz",
            "band_high_hz",
        )
        _require(self.min_separation_s >= 0, "min_separation_s must be >= 0", "min_separation_s")
        _require(
            0 < self.prominence_threshold <= 1,
            "prominence_threshold must lie in (0, 1]",
            "prominence_threshold",
        )
        _require(self.pause_threshold_s > 0, "pause_threshold_s must be positive", "pause_threshold_s")


@dataclass(frozen=True)
class SynthConfig:
    """Parameters of the synthetic breathing-waveform/transcript generator.

    ``duration_s`` and ``seed`` have no sensible universal defaults and must
    be given. The word/gap layout fields only affect :func:`synth_transcript`.
    """

    duration_s: float
    seed: int
    speech_resp_rate_hz: float = 0.1
    ie_duration_mean_s: float = 0.225
    ie_duration_jitter_s: float = 0.02
    drift_per_s: float = 0.0
    noise_sigma: float = 0.01
    grammatical_fraction: float = 0.5
    sample_rate_hz: float = 50.0
    word_duration_s: float = 0.300
    word_gap_s: float = 0.080
    spurious_stop_rate: float = 0.011

    def __post_init__(self):
        _require(self.duration_s > 0, "duration_s must be positive", "duration_s")
        _require(isinstance(self.seed, int), "seed must be an integer", "seed")
        _require(
            self.speech_resp_rate_hz > 0,
            "speech_resp_rate_hz must be positive",
            "speech_resp_rate_hz",
        )
        _require(
            self.ie_duration_mean_s > 0,
            "ie_duration_mean_s must be positive",
            "ie_duration_mean_s",
        )
        _require(
            0 <= self.ie_duration_jitter_s < self.ie_duration_mean_s,
            "ie_duration_jitter_s must be >= 0 and below ie_duration_mean_s",
            "ie_duration_jitter_s",
        )
        _require(
            self.ie_duration_mean_s + self.ie_duration_jitter_s < 1.0 / self.speech_resp_rate_hz,
            "inspiration duration must fit inside one breathing cycle",
            "ie_duration_mean_s",
        )
        _require(math.isfinite(self.drift_per_s), "drift_per_s must be finite", "drift_per_s")
        _require(self.noise_sigma >= 0, "noise_sigma must be >= 0", "noise_sigma")
        _require(
            0 <= self.grammatical_fraction <= 1,
            "grammatical_fraction must lie in [0, 1]",
            "grammatical_fraction",
        )
        _require(self.sample_rate_hz > 0, "sample_rate_hz must be positive", "sample_rate_hz")
        _require(self.word_duration_s > 0, "word_duration_s must be positive", "word_duration_s")
        _require(self.word_gap_s > 0, "word_gap_s must be positive", "word_gap_s")
        _require(
            0 <= self.spurious_stop_rate <= 1,
            "spurious_stop_rate must lie in [0, 1]",
            "spurious_stop_rate",
        )


@dataclass(frozen=True)
class TimedWord:
    """A word with its aligned time span; trailing punctuation kept in text."""

    text: str
    start_s: float
    end_s: float

    def __post_init__(self):
        _require(len(self.text) > 0, "word text must be non-empty", "text")
        _require(
            math.isfinite(self.start_s) and math.isfinite(self.end_s),
            "word times must be finite",
            "start_s",
        )
        _require(
            self.end_s >= self.start_s,
            f"word end_s must be >= start_s (got [{self.start_s}, {self.end_s}])",
            "end_s",
        )


@dataclass(frozen=True)
class Transcript:
    """Time-aligned word sequence for one recording."""

    words: tuple[TimedWord, ...]
    audio_duration_s: float

    def __post_init__(self):
        words = tuple(self.words)
        object.__setattr__(self, "words", words)
        _require(
            math.isfinite(self.audio_duration_s) and self.audio_duration_s >= 0,
            "audio_duration_s must be finite and >= 0",
            "audio_duration_s",
        )
        for a, b in zip(words, words[1:]):
            _require(
                b.start_s >= a.start_s,
                "words must be sorted by start_s",
                "words",
            )
        for w in words:
            _require(
                w.end_s <= self.audio_duration_s,
                f"word ending at {w.end_s} s exceeds audio_duration_s={self.audio_duration_s}",
                "words",
            )
