import numpy as np
import pytest

from breathkit import (
    DEFAULT_STOP_MARKS,
    IeSource,
    TimedWord,
    Transcript,
    ValidationError,
    asr_punct_ies,
    asr_word_ies,
)

from oracles import bf_punct_ies, bf_word_ies, random_transcript_words


def _transcript(words, duration=None):
    tw = tuple(TimedWord(text=t, start_s=s, end_s=e) for t, s, e in words)
    if duration is None:
        duration = max((w.end_s for w in tw), default=0.0) + 1.0
    return Transcript(words=tw, audio_duration_s=duration)


def test_word_gap_above_threshold_is_detected():
    t = _transcript([("alpha", 0.5, 1.00), ("beta", 1.20, 1.60)])
    out = asr_word_ies(t, pause_threshold_s=0.150)
    assert len(out) == 1
    assert out[0].start_s == pytest.approx(1.00)
    assert out[0].end_s == pytest.approx(1.20)
    assert out[0].source is IeSource.ASR_WORD


def test_word_gap_exactly_at_threshold_is_not_detected():
    t = _transcript([("alpha", 0.5, 1.00), ("beta", 1.150, 1.60)])
    assert asr_word_ies(t, pause_threshold_s=0.150) == []


def test_word_method_empty_and_single_word():
    assert asr_word_ies(_transcript([]), 0.15) == []
    assert asr_word_ies(_transcript([("only", 0.0, 0.4)]), 0.15) == []


def test_word_threshold_must_be_positive():
    t = _transcript([("a", 0.0, 0.1), ("b", 0.5, 0.6)])
    with pytest.raises(ValidationError):
        asr_word_ies(t, pause_threshold_s=0.0)


def test_punct_terminal_stop_spans_to_next_word():
    t = _transcript([("project.", 3.0, 3.40), ("Then", 3.95, 4.30)])
    out = asr_punct_ies(t)
    assert len(out) == 1
    assert out[0].start_s == pytest.approx(3.40)
    assert out[0].end_s == pytest.approx(3.95)
    assert out[0].source is IeSource.ASR_PUNCT


def test_punct_final_word_has_no_successor():
    t = _transcript([("start", 0.0, 0.4), ("finish.", 0.6, 1.0)])
    assert asr_punct_ies(t) == []


def test_punct_zero_gap_emits_nothing():
    t = _transcript([("tight.", 0.0, 0.4), ("next", 0.4, 0.8)])
    assert asr_punct_ies(t) == []


def test_punct_respects_custom_marks():
    t = _transcript([("word—", 0.0, 0.4), ("next", 0.6, 1.0)])
    assert asr_punct_ies(t) == []
    out = asr_punct_ies(t, stop_marks=frozenset("—"))
    assert len(out) == 1


def test_punct_default_marks_cover_clause_punctuation():
    assert DEFAULT_STOP_MARKS == frozenset({".", ",", ";", ":", "?", "!"})
    words = []
    t0 = 0.0
    for i, mark in enumerate(sorted(DEFAULT_STOP_MARKS)):
        words.append((f"w{i}{mark}", t0, t0 + 0.3))
        t0 += 0.6
    words.append(("tail", t0, t0 + 0.3))
    out = asr_punct_ies(_transcript(words))
    assert len(out) == len(DEFAULT_STOP_MARKS)


def test_punct_requires_marks():
    t = _transcript([("a.", 0.0, 0.1), ("b", 0.5, 0.6)])
    with pytest.raises(ValidationError):
        asr_punct_ies(t, stop_marks=frozenset())


def test_intervals_never_overlap_words():
    rng = np.random.default_rng(31)
    for _ in range(100):
        words = random_transcript_words(rng)
        t = _transcript(words) if words else _transcript([])
        for iv in asr_word_ies(t, 0.150) + asr_punct_ies(t):
            for _, ws, we in words:
                # closed word interval may touch but not enter the gap
                assert iv.end_s <= ws or iv.start_s >= we


def test_punct_boundaries_coincide_with_word_gaps():
    rng = np.random.default_rng(32)
    for _ in range(100):
        words = random_transcript_words(rng)
        t = _transcript(words) if words else _transcript([])
        gaps = {(a[2], b[1]) for a, b in zip(words, words[1:])}
        for iv in asr_punct_ies(t):
            assert (iv.start_s, iv.end_s) in gaps


def test_both_methods_match_enumeration_oracle():
    rng = np.random.default_rng(33)
    for _ in range(300):
        words = random_transcript_words(rng)
        t = _transcript(words) if words else _transcript([])
        got_w = [(iv.start_s, iv.end_s) for iv in asr_word_ies(t, 0.150)]
        assert got_w == bf_word_ies(words, 0.150)
        got_p = [(iv.start_s, iv.end_s) for iv in asr_punct_ies(t)]
        assert got_p == bf_punct_ies(words, DEFAULT_STOP_MARKS)
