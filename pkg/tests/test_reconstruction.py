import numpy as np
import pytest

from breathkit import (
    ColaViolationError,
    ValidationError,
    WindowShape,
    WindowSpec,
    cola_deviation,
    concatenate,
    interior_slice,
    mock_frame_predictor,
    overlap_add,
)
from breathkit.types import FrameSequence, Waveform

FS = 50.0


def _ramp_wave(n=6000):
    t = np.arange(n) / FS
    x = np.sin(2 * np.pi * 0.13 * t) + 0.3 * np.sin(2 * np.pi * 0.41 * t + 1.0)
    return Waveform(samples=x, sample_rate_hz=FS)


def test_squared_sine_half_hop_is_cola():
    spec = WindowSpec(shape=WindowShape.SQUARED_SINE, length=256, hop_S=128)
    assert cola_deviation(spec) < 1e-9


def test_rectangular_full_hop_is_cola():
    spec = WindowSpec(shape=WindowShape.RECTANGULAR, length=256, hop_S=256)
    assert cola_deviation(spec) < 1e-12


def test_squared_sine_quarter_hop_violates_cola():
    spec = WindowSpec(shape=WindowShape.SQUARED_SINE, length=256, hop_S=64)
    assert cola_deviation(spec) > 1e-6
    frames = FrameSequence(frames=np.zeros((10, 256)), frame_len_K=256, hop_S=64, sample_rate_hz=FS)
    with pytest.raises(ColaViolationError, match="squared_sine"):
        overlap_add(frames, spec)


def test_constant_frames_reconstruct_constant():
    frames = FrameSequence(
        frames=np.full((12, 256), 3.5), frame_len_K=256, hop_S=128, sample_rate_hz=FS
    )
    spec = WindowSpec(shape=WindowShape.SQUARED_SINE, length=256, hop_S=128)
    out = overlap_add(frames, spec)
    assert out.n_samples == 11 * 128 + 256
    interior = out.samples[interior_slice(frames)]
    np.testing.assert_allclose(interior, 3.5, atol=1e-9 * 3.5)


def test_zero_noise_roundtrip_is_identity():
    wave = _ramp_wave()
    frames = mock_frame_predictor(wave, K=256, S=128, boundary_noise_sigma=0.0, seed=0)
    spec = WindowSpec(shape=WindowShape.SQUARED_SINE, length=256, hop_S=128)
    out = overlap_add(frames, spec)
    sl = interior_slice(frames)
    np.testing.assert_allclose(out.samples[sl], wave.samples[: out.n_samples][sl], atol=1e-9)


def test_window_length_must_match_frames():
    frames = FrameSequence(frames=np.zeros((4, 128)), frame_len_K=128, hop_S=64, sample_rate_hz=FS)
    spec = WindowSpec(shape=WindowShape.SQUARED_SINE, length=256, hop_S=128)
    with pytest.raises(ValidationError):
        overlap_add(frames, spec)


def test_concatenate_requires_full_hop():
    frames = FrameSequence(frames=np.zeros((4, 128)), frame_len_K=128, hop_S=64, sample_rate_hz=FS)
    with pytest.raises(ValidationError, match="hop"):
        concatenate(frames)
    full = FrameSequence(
        frames=np.arange(512, dtype=float).reshape(4, 128),
        frame_len_K=128,
        hop_S=128,
        sample_rate_hz=FS,
    )
    out = concatenate(full)
    np.testing.assert_array_equal(out.samples, np.arange(512, dtype=float))


def test_mock_predictor_is_deterministic():
    wave = _ramp_wave()
    a = mock_frame_predictor(wave, K=256, S=128, boundary_noise_sigma=0.3, seed=9)
    b = mock_frame_predictor(wave, K=256, S=128, boundary_noise_sigma=0.3, seed=9)
    np.testing.assert_array_equal(a.frames, b.frames)
    c = mock_frame_predictor(wave, K=256, S=128, boundary_noise_sigma=0.3, seed=10)
    assert not np.array_equal(a.frames, c.frames)


def test_mock_predictor_noise_is_boundary_concentrated():
    wave = _ramp_wave(20000)
    K, S = 256, 128
    clean = mock_frame_predictor(wave, K=K, S=S, boundary_noise_sigma=0.0, seed=4)
    noisy = mock_frame_predictor(wave, K=K, S=S, boundary_noise_sigma=0.5, seed=4)
    err = noisy.frames - clean.frames
    edge_std = np.std(np.concatenate([err[:, 0], err[:, -1]]))
    center_std = np.std(err[:, K // 2 - 2 : K // 2 + 2])
    assert edge_std > 10 * center_std
    assert edge_std == pytest.approx(0.5, rel=0.15)


def test_mock_predictor_frame_slicing_matches_source():
    wave = _ramp_wave()
    frames = mock_frame_predictor(wave, K=256, S=128, boundary_noise_sigma=0.0, seed=0)
    assert frames.n_frames == (wave.n_samples - 256) // 128 + 1
    for p in range(frames.n_frames):
        lo = p * 128
        np.testing.assert_array_equal(frames.frames[p], wave.samples[lo : lo + 256])


def test_mock_predictor_validation():
    wave = _ramp_wave(100)
    with pytest.raises(ValidationError):
        mock_frame_predictor(wave, K=256, S=128, boundary_noise_sigma=0.0, seed=0)
    with pytest.raises(ValidationError):
        mock_frame_predictor(_ramp_wave(), K=256, S=0, boundary_noise_sigma=0.0, seed=0)
    with pytest.raises(ValidationError):
        mock_frame_predictor(_ramp_wave(), K=256, S=128, boundary_noise_sigma=-0.1, seed=0)


def test_interior_slice_excludes_one_overlap_margin():
    frames = FrameSequence(frames=np.zeros((5, 256)), frame_len_K=256, hop_S=128, sample_rate_hz=FS)
    sl = interior_slice(frames)
    total = 4 * 128 + 256
    assert sl == slice(128, total - 128)
    nohop = FrameSequence(frames=np.zeros((5, 256)), frame_len_K=256, hop_S=256, sample_rate_hz=FS)
    assert interior_slice(nohop) == slice(0, 5 * 256)


def test_overlap_add_preserves_sample_rate():
    frames = FrameSequence(frames=np.zeros((3, 64)), frame_len_K=64, hop_S=32, sample_rate_hz=123.0)
    spec = WindowSpec(shape=WindowShape.SQUARED_SINE, length=64, hop_S=32)
    assert overlap_add(frames, spec).sample_rate_hz == 123.0
