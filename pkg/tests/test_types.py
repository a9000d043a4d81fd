import numpy as np
import pytest

from breathkit import (
    DetectorConfig,
    IeInterval,
    IeSource,
    SynthConfig,
    TimedWord,
    Transcript,
    ValidationError,
    Waveform,
    seconds_to_index,
)
from breathkit.types import FrameSequence


def test_waveform_basic_properties():
    w = Waveform(samples=np.arange(100, dtype=float), sample_rate_hz=50.0, label="x")
    assert w.n_samples == 100
    assert w.duration_s == pytest.approx(2.0)
    assert w.times_s()[0] == 0.0
    assert w.times_s()[-1] == pytest.approx(99 / 50.0)


def test_waveform_samples_are_read_only():
    w = Waveform(samples=np.zeros(10), sample_rate_hz=1.0)
    with pytest.raises(ValueError):
        w.samples[0] = 1.0


def test_waveform_rejects_bad_inputs():
    with pytest.raises(ValidationError):
        Waveform(samples=np.zeros(0), sample_rate_hz=50.0)
    with pytest.raises(ValidationError):
        Waveform(samples=np.zeros(10), sample_rate_hz=0.0)
    with pytest.raises(ValidationError):
        Waveform(samples=np.array([1.0, np.nan]), sample_rate_hz=50.0)
    with pytest.raises(ValidationError):
        Waveform(samples=np.zeros((2, 5)), sample_rate_hz=50.0)


def test_seconds_to_index_rounds_to_nearest():
    assert seconds_to_index(0.0, 50.0) == 0
    assert seconds_to_index(1.0, 50.0) == 50
    assert seconds_to_index(0.0299, 50.0) == 1
    assert seconds_to_index(0.031, 50.0) == 2


def test_ie_interval_ordering_and_duration():
    iv = IeInterval(start_s=1.0, end_s=1.25, source=IeSource.BELT)
    assert iv.duration_s == pytest.approx(0.25)
    with pytest.raises(ValidationError):
        IeInterval(start_s=1.0, end_s=1.0, source=IeSource.BELT)
    with pytest.raises(ValidationError):
        IeInterval(start_s=2.0, end_s=1.0, source=IeSource.BELT)


def test_ie_interval_source_coercion():
    iv = IeInterval(start_s=0.0, end_s=1.0, source="vrbola")
    assert iv.source is IeSource.VRBOLA
    with pytest.raises(ValueError):
        IeInterval(start_s=0.0, end_s=1.0, source="sonar")


def test_frame_sequence_shape_rules():
    frames = FrameSequence(
        frames=np.zeros((3, 8)), frame_len_K=8, hop_S=4, sample_rate_hz=50.0
    )
    assert frames.n_frames == 3
    assert frames.frame_len_K == 8
    with pytest.raises(ValidationError):
        FrameSequence(frames=np.zeros((0, 8)), frame_len_K=8, hop_S=4, sample_rate_hz=50.0)
    with pytest.raises(ValidationError):
        FrameSequence(frames=np.zeros((3, 8)), frame_len_K=7, hop_S=4, sample_rate_hz=50.0)
    with pytest.raises(ValidationError):
        FrameSequence(frames=np.zeros((3, 8)), frame_len_K=8, hop_S=0, sample_rate_hz=50.0)
    with pytest.raises(ValidationError):
        FrameSequence(frames=np.zeros((3, 8)), frame_len_K=8, hop_S=9, sample_rate_hz=50.0)
    with pytest.raises(ValidationError):
        FrameSequence(frames=np.zeros(8), frame_len_K=8, hop_S=4, sample_rate_hz=50.0)


def test_detector_config_defaults_and_validation():
    cfg = DetectorConfig()
    assert cfg.filter_order == 3
    assert cfg.band_low_hz == pytest.approx(0.08)
    assert cfg.band_high_hz == pytest.approx(1.0)
    assert cfg.min_separation_s == pytest.approx(1.0)
    assert cfg.prominence_threshold == pytest.approx(0.8)
    assert cfg.pause_threshold_s == pytest.approx(0.150)
    assert cfg.invert_orientation is False
    with pytest.raises(ValidationError):
        DetectorConfig(band_low_hz=1.0, band_high_hz=0.08)
    with pytest.raises(ValidationError):
        DetectorConfig(prominence_threshold=0.0)
    with pytest.raises(ValidationError):
        DetectorConfig(prominence_threshold=1.5)
    with pytest.raises(ValidationError):
        DetectorConfig(filter_order=0)


def test_synth_config_defaults_and_validation():
    cfg = SynthConfig(duration_s=120.0, seed=7)
    assert cfg.speech_resp_rate_hz == pytest.approx(0.1)
    assert cfg.ie_duration_mean_s == pytest.approx(0.225)
    assert cfg.grammatical_fraction == pytest.approx(0.5)
    with pytest.raises(ValidationError):
        SynthConfig(duration_s=120.0, seed=7, grammatical_fraction=1.5)
    with pytest.raises(ValidationError):
        SynthConfig(duration_s=-1.0, seed=7)
    with pytest.raises(ValidationError):
        SynthConfig(duration_s=120.0, seed=7, ie_duration_jitter_s=0.3)
    with pytest.raises(ValidationError):
        # at 5 Hz the cycle (0.2 s) is shorter than mean + jitter (0.245 s)
        SynthConfig(duration_s=120.0, seed=7, speech_resp_rate_hz=5.0)


def test_timed_word_and_transcript_invariants():
    w1 = TimedWord(text="hello", start_s=0.0, end_s=0.3)
    w2 = TimedWord(text="there.", start_s=0.4, end_s=0.7)
    t = Transcript(words=(w1, w2), audio_duration_s=1.0)
    assert len(t.words) == 2
    with pytest.raises(ValidationError):
        TimedWord(text="", start_s=0.0, end_s=0.3)
    with pytest.raises(ValidationError):
        TimedWord(text="x", start_s=0.5, end_s=0.3)
    with pytest.raises(ValidationError):
        Transcript(words=(w2, w1), audio_duration_s=1.0)
    with pytest.raises(ValidationError):
        Transcript(words=(w1, w2), audio_duration_s=0.5)
