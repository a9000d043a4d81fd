"""Command-line interface.

Subcommands wire the library into file-based pipelines:

* ``detect`` — waveform file → event intervals (+ breathing stats);
* ``reconstruct`` — frames file → waveform, overlap-add or concatenation;
* ``eval`` — estimate/truth interval files → scoring report;
* ``synth`` — config → waveform + truth + transcript files;
* ``transcribe-ies`` — transcript file → event intervals by word-pause or
  punctuation method.

Options can come from a TOML config (``[detector]`` / ``[synth]`` tables)
with individual command-line flags taking precedence. Exit codes: 0 success,
1 validation problem, 2 I/O or format problem, 3 numerical failure. Outputs
are written atomically; a failing command leaves no partial files.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .detection import detect_ies
from .evaluation import (
    ConfusionCounts,
    duration_histogram,
    format_metric,
    metrics,
    score,
)
from .fileio import (
    FileFormatError,
    atomic_write,
    read_config,
    read_frames,
    read_intervals,
    read_transcript,
    read_waveform,
    sha256_digest,
    write_intervals,
    write_transcript,
    write_waveform,
)
from .filters import FilterDesignError
from .reconstruction import (
    ColaViolationError,
    WindowShape,
    WindowSpec,
    concatenate,
    overlap_add,
)
from .synthesis import synth_breathing, synth_transcript
from .transcripts import DEFAULT_STOP_MARKS, asr_punct_ies, asr_word_ies
from .types import DetectorConfig, IeSource, SynthConfig, ValidationError


def _merge_config(cls, table: dict, cli_overrides: dict):
    """Config-file values override dataclass defaults; CLI flags override both."""
    kwargs = dict(table)
    kwargs.update({k: v for k, v in cli_overrides.items() if v is not None})
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ValidationError(f"incomplete or unknown configuration: {exc}", field=cls.__name__)


def _detector_config(args) -> DetectorConfig:
    table = {}
    if args.config:
        table = read_config(args.config).get("detector", {})
    overrides = {
        "filter_order": args.filter_order,
        "band_low_hz": args.band_low,
        "band_high_hz": args.band_high,
        "min_separation_s": args.min_separation,
        "prominence_threshold": args.prominence_threshold,
        "pause_threshold_s": getattr(args, "pause_threshold", None),
        "invert_orientation": True if getattr(args, "invert_orientation", False) else None,
    }
    return _merge_config(DetectorConfig, table, overrides)


def _cmd_detect(args) -> int:
    config = _detector_config(args)
    wave = read_waveform(args.waveform)
    intervals, stats = detect_ies(wave, config, source=IeSource(args.source))
    write_intervals(args.output, intervals)
    stats_doc = {
        "breathing_rate_hz": stats.breathing_rate_hz,
        "n_events": stats.n_events,
        "ie_durations_s": list(stats.ie_durations_s),
    }
    if args.stats:
        atomic_write(args.stats, json.dumps(stats_doc) + "\n")
    else:
        print(json.dumps(stats_doc))
    return 0


def _cmd_reconstruct(args) -> int:
    frames = read_frames(args.frames)
    if args.mode == "concat":
        wave = concatenate(frames)
    else:
        window = WindowSpec(
            shape=WindowShape(args.window),
            length=frames.frame_len_K,
            hop_S=frames.hop_S,
        )
        wave = overlap_add(frames, window)
    write_waveform(args.output, wave)
    return 0


def _histogram_doc(h) -> dict:
    return {
        "bin_width_s": h.bin_width_s,
        "bin_start_s": h.bin_start_s,
        "bin_counts": list(h.bin_counts),
    }


def _metrics_docs(counts: ConfusionCounts) -> tuple[dict, dict]:
    m = metrics(counts)
    full = {"sensitivity": m.sensitivity, "specificity": m.specificity, "f1": m.f1}
    display = {k: format_metric(v) for k, v in full.items()}
    return full, display


def _cmd_eval(args) -> int:
    est_paths = args.estimates
    truth_paths = args.truth
    if len(est_paths) != len(truth_paths):
        raise ValidationError(
            f"got {len(est_paths)} estimate file(s) but {len(truth_paths)} "
            f"truth file(s); pass them in matched pairs",
            field="estimates",
        )

    recordings = []
    corpus_counts = ConfusionCounts(0, 0, 0, 0)
    all_est, all_truth = [], []
    for est_path, truth_path in zip(est_paths, truth_paths):
        estimates = sorted(read_intervals(est_path), key=lambda iv: iv.start_s)
        truth = sorted(read_intervals(truth_path), key=lambda iv: iv.start_s)
        counts = score(
            estimates,
            truth,
            overlap_slack_s=args.slack,
            include_edge_gaps=args.include_edge_gaps,
        )
        corpus_counts = corpus_counts + counts
        all_est.extend(estimates)
        all_truth.extend(truth)
        full, display = _metrics_docs(counts)
        recordings.append(
            {
                "estimates_path": str(est_path),
                "truth_path": str(truth_path),
                "counts": asdict(counts),
                "metrics": full,
                "metrics_display": display,
                "histogram_estimates": _histogram_doc(
                    duration_histogram(estimates, args.bin_width)
                ),
                "histogram_truth": _histogram_doc(
                    duration_histogram(truth, args.bin_width)
                ),
            }
        )

    corpus_full, corpus_display = _metrics_docs(corpus_counts)
    hist_est = duration_histogram(all_est, args.bin_width)
    hist_truth = duration_histogram(all_truth, args.bin_width)
    report = {
        "tool": {"name": "breathkit", "version": __version__},
        "config": {
            "bin_width_s": args.bin_width,
            "overlap_slack_s": args.slack,
            "include_edge_gaps": args.include_edge_gaps,
        },
        "inputs": [
            {"role": role, "path": str(p), "sha256": sha256_digest(p)}
            for role, paths in (("estimates", est_paths), ("truth", truth_paths))
            for p in paths
        ],
        "recordings": recordings,
        "corpus": {
            "counts": asdict(corpus_counts),
            "metrics": corpus_full,
            "metrics_display": corpus_display,
            "histogram_estimates": _histogram_doc(hist_est),
            "histogram_truth": _histogram_doc(hist_truth),
        },
    }
    atomic_write(args.output, json.dumps(report, indent=2) + "\n")

    if args.emit_plot_data:
        n_bins = max(len(hist_est.bin_counts), len(hist_truth.bin_counts))
        lines = ["bin_low_s,bin_high_s,estimates,truth"]
        for k in range(n_bins):
            e = hist_est.bin_counts[k] if k < len(hist_est.bin_counts) else 0
            t = hist_truth.bin_counts[k] if k < len(hist_truth.bin_counts) else 0
            lines.append(
                f"{k * args.bin_width:.6f},{(k + 1) * args.bin_width:.6f},{e},{t}"
            )
        atomic_write(args.emit_plot_data, "\n".join(lines) + "\n")

    c = corpus_counts
    print(
        f"corpus: tp={c.tp} tn={c.tn} fp={c.fp} fn={c.fn} "
        f"sensitivity={corpus_display['sensitivity']} "
        f"specificity={corpus_display['specificity']} "
        f"f1={corpus_display['f1']}"
    )
    return 0


def _cmd_synth(args) -> int:
    table = {}
    if args.config:
        table = read_config(args.config).get("synth", {})
    overrides = {
        "duration_s": args.duration,
        "seed": args.seed,
        "speech_resp_rate_hz": args.rate,
        "ie_duration_mean_s": args.ie_duration_mean,
        "ie_duration_jitter_s": args.ie_duration_jitter,
        "drift_per_s": args.drift,
        "noise_sigma": args.noise_sigma,
        "grammatical_fraction": args.grammatical_fraction,
        "sample_rate_hz": args.sample_rate,
        "word_duration_s": args.word_duration,
        "word_gap_s": args.word_gap,
        "spurious_stop_rate": args.spurious_stop_rate,
    }
    merged = dict(table)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    if "seed" not in merged:
        raise ValidationError(
            "a seed is required: pass --seed or set it in [synth]", field="seed"
        )
    if "duration_s" not in merged:
        raise ValidationError(
            "a duration is required: pass --duration or set it in [synth]",
            field="duration_s",
        )
    cfg = _merge_config(SynthConfig, merged, {})

    wave, truth = synth_breathing(cfg)
    transcript = synth_transcript(truth, cfg)
    prefix = Path(args.out_prefix)
    write_waveform(prefix.with_name(prefix.name + ".waveform.csv"), wave)
    write_intervals(prefix.with_name(prefix.name + ".truth.csv"), truth)
    write_transcript(prefix.with_name(prefix.name + ".transcript.json"), transcript)
    return 0


def _cmd_transcribe_ies(args) -> int:
    transcript = read_transcript(args.transcript)
    if args.method == "word":
        threshold = args.pause_threshold
        if threshold is None and args.config:
            threshold = read_config(args.config).get("detector", {}).get(
                "pause_threshold_s"
            )
        if threshold is None:
            threshold = DetectorConfig().pause_threshold_s
        intervals = asr_word_ies(transcript, pause_threshold_s=threshold)
    else:
        marks = frozenset(args.stop_marks) if args.stop_marks else DEFAULT_STOP_MARKS
        intervals = asr_punct_ies(transcript, stop_marks=marks)
    write_intervals(args.output, intervals)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="breathkit",
        description="Breathing-waveform analysis: event detection, "
        "reconstruction, transcript methods, and scoring.",
    )
    parser.add_argument("--version", action="version", version=f"breathkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="detect inspiration events in a waveform file")
    p.add_argument("waveform", help="input waveform (.csv or .json)")
    p.add_argument("-o", "--output", required=True, help="output intervals CSV")
    p.add_argument("--stats", help="write breathing stats JSON here (default: stdout)")
    p.add_argument("--config", help="TOML config with a [detector] table")
    p.add_argument("--filter-order", type=int)
    p.add_argument("--band-low", type=float)
    p.add_argument("--band-high", type=float)
    p.add_argument("--min-separation", type=float)
    p.add_argument("--prominence-threshold", type=float)
    p.add_argument("--invert-orientation", action="store_true")
    p.add_argument(
        "--source",
        default="belt",
        choices=["belt", "vrb", "vrbola", "synthetic"],
        help="source tag recorded on the output intervals",
    )
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("reconstruct", help="rebuild a waveform from a frames file")
    p.add_argument("frames", help="input frames JSON")
    p.add_argument("-o", "--output", required=True, help="output waveform (.csv or .json)")
    p.add_argument("--mode", choices=["ola", "concat"], default="ola")
    p.add_argument(
        "--window",
        choices=[w.value for w in WindowShape],
        default=WindowShape.SQUARED_SINE.value,
        help="window shape for --mode=ola",
    )
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("eval", help="score estimate intervals against ground truth")
    p.add_argument("--estimates", action="append", required=True, help="estimates CSV (repeatable)")
    p.add_argument("--truth", action="append", required=True, help="truth CSV (repeatable)")
    p.add_argument("-o", "--output", required=True, help="output report JSON")
    p.add_argument("--bin-width", type=float, default=0.05, help="histogram bin width in seconds")
    p.add_argument("--slack", type=float, default=0.0, help="overlap slack in seconds")
    p.add_argument("--include-edge-gaps", action="store_true")
    p.add_argument("--emit-plot-data", help="write histogram series CSV here")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("synth", help="generate synthetic waveform + truth + transcript")
    p.add_argument("--config", help="TOML config with a [synth] table")
    p.add_argument("--seed", type=int, help="random seed (required here or in config)")
    p.add_argument("--duration", type=float, help="duration in seconds")
    p.add_argument("--rate", type=float, help="breathing rate in Hz")
    p.add_argument("--ie-duration-mean", type=float)
    p.add_argument("--ie-duration-jitter", type=float)
    p.add_argument("--drift", type=float)
    p.add_argument("--noise-sigma", type=float)
    p.add_argument("--grammatical-fraction", type=float)
    p.add_argument("--sample-rate", type=float)
    p.add_argument("--word-duration", type=float)
    p.add_argument("--word-gap", type=float)
    p.add_argument("--spurious-stop-rate", type=float)
    p.add_argument("--out-prefix", required=True, help="output path prefix")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser(
        "transcribe-ies", help="derive event intervals from a transcript file"
    )
    p.add_argument("transcript", help="input transcript JSON")
    p.add_argument("--method", choices=["word", "punct"], required=True)
    p.add_argument("-o", "--output", required=True, help="output intervals CSV")
    p.add_argument("--pause-threshold", type=float, help="word-pause threshold in seconds")
    p.add_argument("--stop-marks", help="characters treated as grammatical stops")
    p.add_argument("--config", help="TOML config with a [detector] table")
    p.set_defaults(func=_cmd_transcribe_ies)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ColaViolationError, FilterDesignError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
