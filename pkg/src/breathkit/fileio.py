"""On-disk formats and atomic writing.

Formats:

* waveform CSV — header ``time_s,value``; the time column must be uniform
  to within 1e-6 s (the rate is inferred from it);
* waveform JSON — ``{"label", "sample_rate_hz", "samples"}``;
* frames JSON — ``{"sample_rate_hz", "K", "S", "frames"}``;
* transcript JSON — ``{"audio_duration_s", "words": [{word, start, end}]}``;
* intervals CSV — header ``start_s,end_s,source``;
* config TOML — ``[detector]`` and ``[synth]`` tables mirroring the config
  dataclasses.

Structural problems (bad header, non-numeric cell, missing key) raise
FileFormatError naming the file and position; values that parse but violate
type invariants surface as ValidationError from the type constructors. All
writers go through ``atomic_write`` — a temp file in the destination
directory followed by an atomic rename — so a failed command never leaves a
partial output behind.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import tempfile
from dataclasses import fields as dataclass_fields
from pathlib import Path

import numpy as np
import tomli

from .types import (
    DetectorConfig,
    FrameSequence,
    IeInterval,
    SynthConfig,
    TimedWord,
    Transcript,
    ValidationError,
    Waveform,
)

_TIME_UNIFORMITY_TOL_S = 1e-6


class FileFormatError(Exception):
    """A file could not be parsed as the expected format."""

    def __init__(self, path, message: str):
        super().__init__(f"{path}: {message}")
        self.path = str(path)


def atomic_write(path, data: str) -> None:
    """Write text to ``path`` via a temp file + rename in one step."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(
        dir=str(target.parent) or ".", prefix=target.name + ".", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def sha256_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


# ---------------------------------------------------------------- waveforms


def read_waveform(path) -> Waveform:
    p = Path(path)
    if p.suffix.lower() == ".json":
        return _read_waveform_json(p)
    if p.suffix.lower() == ".csv":
        return _read_waveform_csv(p)
    raise FileFormatError(p, "unknown waveform extension (expected .csv or .json)")


def _read_waveform_csv(p: Path) -> Waveform:
    with open(p, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["time_s", "value"]:
            raise FileFormatError(p, f"expected header 'time_s,value', got {header!r}")
        times: list[float] = []
        values: list[float] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise FileFormatError(p, f"line {lineno}: expected 2 columns, got {len(row)}")
            try:
                times.append(float(row[0]))
                values.append(float(row[1]))
            except ValueError:
                raise FileFormatError(p, f"line {lineno}: non-numeric cell in {row!r}")
    if len(values) < 1:
        raise FileFormatError(p, "no samples")
    if len(times) >= 2:
        dts = np.diff(np.asarray(times))
        dt = float(np.median(dts))
        if dt <= 0:
            raise FileFormatError(p, "time column must be strictly increasing")
        bad = np.flatnonzero(np.abs(dts - dt) > _TIME_UNIFORMITY_TOL_S)
        if bad.size:
            raise FileFormatError(
                p,
                f"line {int(bad[0]) + 3}: time step {dts[bad[0]]:.9f} s deviates "
                f"from {dt:.9f} s by more than {_TIME_UNIFORMITY_TOL_S} s",
            )
        rate = 1.0 / dt
    else:
        raise FileFormatError(p, "need at least 2 rows to infer the sample rate")
    return Waveform(samples=np.asarray(values), sample_rate_hz=rate, label=p.stem)


def _read_waveform_json(p: Path) -> Waveform:
    doc = _load_json(p)
    for key in ("label", "sample_rate_hz", "samples"):
        if key not in doc:
            raise FileFormatError(p, f"missing key {key!r}")
    return Waveform(
        samples=np.asarray(doc["samples"], dtype=np.float64),
        sample_rate_hz=float(doc["sample_rate_hz"]),
        label=str(doc["label"]),
    )


def write_waveform(path, wave: Waveform) -> None:
    p = Path(path)
    if p.suffix.lower() == ".json":
        doc = {
            "label": wave.label,
            "sample_rate_hz": wave.sample_rate_hz,
            "samples": [float(v) for v in wave.samples],
        }
        atomic_write(p, json.dumps(doc) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["time_s", "value"])
    fs = wave.sample_rate_hz
    for i, v in enumerate(wave.samples):
        writer.writerow([f"{i / fs:.6f}", repr(float(v))])
    atomic_write(p, buf.getvalue())


# ------------------------------------------------------------------- frames


def read_frames(path) -> FrameSequence:
    p = Path(path)
    doc = _load_json(p)
    for key in ("sample_rate_hz", "K", "S", "frames"):
        if key not in doc:
            raise FileFormatError(p, f"missing key {key!r}")
    return FrameSequence(
        frames=np.asarray(doc["frames"], dtype=np.float64),
        frame_len_K=int(doc["K"]),
        hop_S=int(doc["S"]),
        sample_rate_hz=float(doc["sample_rate_hz"]),
    )


def write_frames(path, frames: FrameSequence) -> None:
    doc = {
        "sample_rate_hz": frames.sample_rate_hz,
        "K": frames.frame_len_K,
        "S": frames.hop_S,
        "frames": [[float(v) for v in row] for row in frames.frames],
    }
    atomic_write(path, json.dumps(doc) + "\n")


# -------------------------------------------------------------- transcripts


def read_transcript(path) -> Transcript:
    p = Path(path)
    doc = _load_json(p)
    for key in ("audio_duration_s", "words"):
        if key not in doc:
            raise FileFormatError(p, f"missing key {key!r}")
    words = []
    for k, entry in enumerate(doc["words"]):
        try:
            words.append(
                TimedWord(
                    text=str(entry["word"]),
                    start_s=float(entry["start"]),
                    end_s=float(entry["end"]),
                )
            )
        except (KeyError, TypeError) as exc:
            raise FileFormatError(p, f"words[{k}]: malformed entry ({exc})")
    return Transcript(words=tuple(words), audio_duration_s=float(doc["audio_duration_s"]))


def write_transcript(path, transcript: Transcript) -> None:
    doc = {
        "audio_duration_s": transcript.audio_duration_s,
        "words": [
            {"word": w.text, "start": w.start_s, "end": w.end_s}
            for w in transcript.words
        ],
    }
    atomic_write(path, json.dumps(doc) + "\n")


# ---------------------------------------------------------------- intervals


def read_intervals(path) -> list[IeInterval]:
    p = Path(path)
    out: list[IeInterval] = []
    with open(p, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["start_s", "end_s", "source"]:
            raise FileFormatError(
                p, f"expected header 'start_s,end_s,source', got {header!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise FileFormatError(p, f"line {lineno}: expected 3 columns, got {len(row)}")
            try:
                start, end = float(row[0]), float(row[1])
            except ValueError:
                raise FileFormatError(p, f"line {lineno}: non-numeric bound in {row!r}")
            try:
                out.append(IeInterval(start_s=start, end_s=end, source=row[2]))
            except ValueError as exc:
                raise FileFormatError(p, f"line {lineno}: {exc}")
    return out


def write_intervals(path, intervals: list[IeInterval]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["start_s", "end_s", "source"])
    for iv in intervals:
        writer.writerow([repr(iv.start_s), repr(iv.end_s), iv.source.value])
    atomic_write(path, buf.getvalue())


# ------------------------------------------------------------------- config


_DETECTOR_FIELDS = {f.name for f in dataclass_fields(DetectorConfig)}
_SYNTH_FIELDS = {f.name for f in dataclass_fields(SynthConfig)}


def read_config(path) -> dict:
    """Parse a TOML config with optional [detector] and [synth] tables."""
    p = Path(path)
    try:
        with open(p, "rb") as fh:
            doc = tomli.load(fh)
    except tomli.TOMLDecodeError as exc:
        raise FileFormatError(p, f"invalid TOML: {exc}")
    unknown = set(doc) - {"detector", "synth"}
    if unknown:
        raise ValidationError(
            f"unknown config table(s): {sorted(unknown)}", field="config"
        )
    for table, allowed in (("detector", _DETECTOR_FIELDS), ("synth", _SYNTH_FIELDS)):
        extra = set(doc.get(table, {})) - allowed
        if extra:
            raise ValidationError(
                f"unknown key(s) in [{table}]: {sorted(extra)}", field=table
            )
    return doc


def _load_json(p: Path):
    try:
        with open(p) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FileFormatError(p, f"invalid JSON: {exc}")
