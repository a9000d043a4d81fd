"""Breathing-waveform toolkit.

Detects inspiration events in respiratory effort waveforms, rebuilds
waveforms from framed model output by windowed overlap-add, derives the
same events from timed transcripts, scores estimates against ground
truth, and generates synthetic recordings for end-to-end checks.
"""

from .detection import BreathingStats, breathing_rate, detect_ies
from .evaluation import (
    ConfusionCounts,
    DurationHistogram,
    MetricSet,
    duration_histogram,
    format_metric,
    metrics,
    score,
)
from .extrema import Extremum, ExtremumKind, find_extrema
from .fileio import (
    FileFormatError,
    atomic_write,
    read_config,
    read_frames,
    read_intervals,
    read_transcript,
    read_waveform,
    sha256_digest,
    write_frames,
    write_intervals,
    write_transcript,
    write_waveform,
)
from .filters import (
    FilterCascade,
    FilterDesignError,
    design_butterworth_bandpass,
    dump_coefficients,
    filtfilt,
    magnitude_response,
)
from .reconstruction import (
    ColaViolationError,
    WindowShape,
    WindowSpec,
    cola_deviation,
    concatenate,
    interior_slice,
    mock_frame_predictor,
    overlap_add,
)
from .synthesis import synth_breathing, synth_transcript
from .transcripts import DEFAULT_STOP_MARKS, asr_punct_ies, asr_word_ies
from .types import (
    DetectorConfig,
    FrameSequence,
    IeInterval,
    IeSource,
    SynthConfig,
    TimedWord,
    Transcript,
    ValidationError,
    Waveform,
    seconds_to_index,
)

__version__ = "0.1.0"

__all__ = [
    "BreathingStats",
    "ColaViolationError",
    "ConfusionCounts",
    "DEFAULT_STOP_MARKS",
    "DetectorConfig",
    "DurationHistogram",
    "Extremum",
    "ExtremumKind",
    "FileFormatError",
    "FilterCascade",
    "FilterDesignError",
    "FrameSequence",
    "IeInterval",
    "IeSource",
    "MetricSet",
    "SynthConfig",
    "TimedWord",
    "Transcript",
    "ValidationError",
    "Waveform",
    "WindowShape",
    "WindowSpec",
    "asr_punct_ies",
    "asr_word_ies",
    "atomic_write",
    "breathing_rate",
    "cola_deviation",
    "concatenate",
    "design_butterworth_bandpass",
    "detect_ies",
    "dump_coefficients",
    "duration_histogram",
    "filtfilt",
    "find_extrema",
    "format_metric",
    "interior_slice",
    "magnitude_response",
    "metrics",
    "mock_frame_predictor",
    "overlap_add",
    "read_config",
    "read_frames",
    "read_intervals",
    "read_transcript",
    "read_waveform",
    "score",
    "seconds_to_index",
    "sha256_digest",
    "synth_breathing",
    "synth_transcript",
    "write_frames",
    "write_intervals",
    "write_transcript",
    "write_waveform",
]
