"""Inspiration-event candidates from time-aligned transcripts."""

from __future__ import annotations

from .types import IeInterval, IeSource, Transcript, ValidationError

# Clause- and sentence-final marks; commas included since clause ends are
# breathing opportunities too. Override per call if needed.
DEFAULT_STOP_MARKS = frozenset({".", ",", ";", ":", "?", "!"})


def asr_word_ies(
    transcript: Transcript, pause_threshold_s: float = 0.150
) -> list[IeInterval]:
    """Word-pause candidates: every inter-word gap strictly longer than the
    threshold becomes an event spanning exactly that gap."""
    if pause_threshold_s <= 0:
        raise ValidationError(
            "pause_threshold_s must be positive", field="pause_threshold_s"
        )
    out = []
    for cur, nxt in zip(transcript.words, transcript.words[1:]):
        gap = nxt.start_s - cur.end_s
        if gap > pause_threshold_s:
            out.append(
                IeInterval(start_s=cur.end_s, end_s=nxt.start_s, source=IeSource.ASR_WORD)
            )
    return out


def asr_punct_ies(
    transcript: Transcript, stop_marks=DEFAULT_STOP_MARKS
) -> list[IeInterval]:
    """Grammatical-stop candidates: each word whose text ends with a stop
    mark and which has a successor yields the gap up to that successor's
    start. Zero or negative gaps produce nothing (an event needs extent).
    Only the final character is inspected, so mid-word punctuation such as
    abbreviations is not special-cased."""
    marks = frozenset(stop_marks)
    if not marks:
        raise ValidationError("stop_marks must be non-empty", field="stop_marks")
    out = []
    for cur, nxt in zip(transcript.words, transcript.words[1:]):
        if cur.text[-1] not in marks:
            continue
        if nxt.start_s > cur.end_s:
            out.append(
                IeInterval(
                    start_s=cur.end_s, end_s=nxt.start_s, source=IeSource.ASR_PUNCT
                )
            )
    return out
