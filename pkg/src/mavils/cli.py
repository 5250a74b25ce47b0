"""Command-line interface wiring the alignment engine into batch workflows.

Subcommands:
    similarity        cosine similarity matrix from two embedding files
    align             decode a slide sequence from similarity matrices
    optimize-weights  per-lecture modality weights via Adam ascent
    eval              score an alignment against ground truth
    sweep             run align+eval over a corpus for a grid of jump weights
    synth             generate synthetic lectures with planted ground truth
    stats             volatility and no-slide ratio of a ground truth file

Every command that writes outputs also writes a `<output>.manifest.json`
recording the command line, inputs, configuration, tool version, and wall
time, so runs are reproducible. Exit codes: 0 success, 2 usage/validation
error, 1 internal error.

MAVILS_THREADS caps sweep parallelism (default 1).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, io
from .align import AlignmentConfig, dp_align
from .combine import (
    ModalityWeights,
    OptimizerSettings,
    combine_max,
    combine_mean,
    combine_weighted,
    optimize_weights,
)
from .evaluate import no_slide_ratio, score_alignment, volatility_score
from .matrix import cosine_similarity_matrix
from .synth import SynthSpec, generate

DEFAULT_JUMP_GRID = "0,0.1,0.15,0.2,0.25"
LECTURE_FILES = ("text.csv", "audio.csv", "image.csv", "truth.csv")


def _write_manifest(out_path, command: str, inputs: dict, config: dict, started: float) -> None:
    manifest = {
        "command": command,
        "inputs": inputs,
        "config": config,
        "tool_version": __version__,
        "duration_seconds": time.perf_counter() - started,
    }
    Path(str(out_path) + ".manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )


def _config_from_args(args) -> AlignmentConfig:
    return AlignmentConfig(
        lambda_jump=args.lambda_jump,
        lambda_linear=args.lambda_linear,
        linear_penalty_mode=args.linear_mode,
        jump_direction_mode=args.jump_mode,
    )


def _add_config_flags(parser) -> None:
    parser.add_argument("--lambda-jump", type=float, default=0.1, help="jump penalty weight")
    parser.add_argument("--lambda-linear", type=float, default=0.0, help="linear penalty weight")
    parser.add_argument(
        "--linear-mode",
        choices=["slide_deviation", "literal"],
        default="slide_deviation",
        help="how the linear deviation is measured",
    )
    parser.add_argument(
        "--jump-mode",
        choices=["as_written", "swapped"],
        default="as_written",
        help="which jump direction carries the doubled penalty",
    )


def cmd_similarity(args) -> int:
    started = time.perf_counter()
    frames = io.read_embeddings(args.frames)
    slides = io.read_embeddings(args.slides)
    sim = cosine_similarity_matrix(frames, slides)
    io.write_similarity(sim, args.out)
    _write_manifest(
        args.out,
        "similarity",
        {"frames": str(args.frames), "slides": str(args.slides)},
        {},
        started,
    )
    return 0


def _load_combined(args, config: AlignmentConfig):
    """Resolve the input matrices into one similarity matrix.

    Returns (matrix, weights_used_or_None, inputs_dict).
    """
    if args.similarity is not None:
        if args.text or args.audio or args.image:
            raise ValueError("give either --similarity or the three modality paths, not both")
        return io.read_similarity(args.similarity), None, {"similarity": str(args.similarity)}
    if not (args.text and args.audio and args.image):
        raise ValueError("need --similarity, or all of --text, --audio, and --image")
    a = io.read_similarity(args.text)
    b = io.read_similarity(args.audio)
    c = io.read_similarity(args.image)
    inputs = {"text": str(args.text), "audio": str(args.audio), "image": str(args.image)}
    if args.method == "mean":
        return combine_mean([a, b, c]), None, inputs
    if args.method == "max":
        return combine_max([a, b, c]), None, inputs
    if args.weights:
        doc = json.loads(Path(args.weights).read_text())
        weights = ModalityWeights(doc["w_text"], doc["w_audio"], doc["w_image"])
        inputs["weights"] = str(args.weights)
    else:
        weights, trace = optimize_weights(a, b, c, config)
        weights_path = Path(str(args.out) + ".weights.json")
        _write_weights(weights, trace, weights_path)
        inputs["weights"] = str(weights_path)
    return combine_weighted(a, b, c, weights), weights, inputs


def cmd_align(args) -> int:
    started = time.perf_counter()
    config = _config_from_args(args)
    sim, weights, inputs = _load_combined(args, config)
    alignment = dp_align(sim, config)
    io.write_alignment(alignment, args.out, config)
    config_doc = {
        "lambda_jump": config.lambda_jump,
        "lambda_linear": config.lambda_linear,
        "linear_penalty_mode": config.linear_penalty_mode,
        "jump_direction_mode": config.jump_direction_mode,
        "method": args.method,
    }
    if weights is not None:
        config_doc["weights"] = {
            "w_text": weights.w_text,
            "w_audio": weights.w_audio,
            "w_image": weights.w_image,
        }
    _write_manifest(args.out, "align", inputs, config_doc, started)
    return 0


def _write_weights(weights: ModalityWeights, trace: list[float], path) -> None:
    doc = {
        "w_text": weights.w_text,
        "w_audio": weights.w_audio,
        "w_image": weights.w_image,
        "objective_trace": trace,
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def cmd_optimize_weights(args) -> int:
    started = time.perf_counter()
    config = _config_from_args(args)
    a = io.read_similarity(args.text)
    b = io.read_similarity(args.audio)
    c = io.read_similarity(args.image)
    settings = OptimizerSettings(learning_rate=args.learning_rate, iterations=args.iterations)
    weights, trace = optimize_weights(a, b, c, config, settings)
    _write_weights(weights, trace, args.out)
    _write_manifest(
        args.out,
        "optimize-weights",
        {"text": str(args.text), "audio": str(args.audio), "image": str(args.image)},
        {
            "lambda_jump": config.lambda_jump,
            "lambda_linear": config.lambda_linear,
            "learning_rate": settings.learning_rate,
            "iterations": settings.iterations,
        },
        started,
    )
    return 0


def cmd_eval(args) -> int:
    started = time.perf_counter()
    alignment, _ = io.read_alignment(args.alignment)
    truth = io.read_ground_truth(args.truth, total_slides=args.total_slides)
    report = score_alignment(alignment, truth)
    Path(args.out).write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")

    lecture_id = args.lecture_id or Path(args.truth).stem
    summary = Path(args.summary_csv) if args.summary_csv else Path(args.out).parent / "summary.csv"
    new_file = not summary.exists()
    with open(summary, "a", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        if new_file:
            writer.writerow(["lecture_id", "accuracy", "f1_macro", "volatility", "no_slide_ratio"])
        writer.writerow(
            [lecture_id, report.accuracy, report.f1_macro, report.volatility, report.no_slide_ratio]
        )
    _write_manifest(
        args.out,
        "eval",
        {"alignment": str(args.alignment), "truth": str(args.truth)},
        {"total_slides": args.total_slides, "summary_csv": str(summary)},
        started,
    )
    return 0


def _eval_lecture(lecture_dir: Path, grid: list[float], args) -> list[float]:
    mats = {}
    for name in ("text", "audio", "image"):
        path = lecture_dir / f"{name}.csv"
        if not path.exists():
            path = lecture_dir / f"{name}.mvls"
        mats[name] = io.read_similarity(path)
    truth = io.read_ground_truth(lecture_dir / "truth.csv")
    if args.method == "mean":
        sim = combine_mean([mats["text"], mats["audio"], mats["image"]])
    elif args.method == "max":
        sim = combine_max([mats["text"], mats["audio"], mats["image"]])
    else:
        weights, _ = optimize_weights(
            mats["text"], mats["audio"], mats["image"], _config_from_args(args)
        )
        sim = combine_weighted(mats["text"], mats["audio"], mats["image"], weights)
    accuracies = []
    for lam in grid:
        config = AlignmentConfig(
            lambda_jump=lam,
            lambda_linear=args.lambda_linear,
            linear_penalty_mode=args.linear_mode,
            jump_direction_mode=args.jump_mode,
        )
        report = score_alignment(dp_align(sim, config), truth)
        accuracies.append(report.accuracy)
    return accuracies


def cmd_sweep(args) -> int:
    started = time.perf_counter()
    corpus = Path(args.corpus_dir)
    lecture_dirs = sorted(p for p in corpus.iterdir() if p.is_dir()) if corpus.is_dir() else []
    if not lecture_dirs:
        raise ValueError(f"no lecture directories found in {corpus}")
    grid = [float(v) for v in args.lambda_jump_grid.split(",") if v.strip() != ""]
    if not grid:
        raise ValueError("empty --lambda-jump-grid")

    threads = int(os.environ.get("MAVILS_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda d: _eval_lecture(d, grid, args), lecture_dirs))
    else:
        rows = [_eval_lecture(d, grid, args) for d in lecture_dirs]

    with open(args.out, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["lecture"] + [str(v) for v in grid])
        for lecture_dir, accuracies in zip(lecture_dirs, rows):
            writer.writerow([lecture_dir.name] + [f"{a:.6f}" for a in accuracies])
        averages = np.mean(np.array(rows), axis=0)
        writer.writerow(["average"] + [f"{a:.6f}" for a in averages])
    _write_manifest(
        args.out,
        "sweep",
        {"corpus_dir": str(corpus), "lectures": [d.name for d in lecture_dirs]},
        {"lambda_jump_grid": grid, "method": args.method},
        started,
    )
    return 0


def cmd_synth(args) -> int:
    started = time.perf_counter()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    targets = (
        [(out_dir, args.seed)]
        if args.count == 1
        else [(out_dir / f"lec{i:02d}", args.seed + i) for i in range(args.count)]
    )
    for lecture_dir, seed in targets:
        lecture_dir.mkdir(parents=True, exist_ok=True)
        spec = SynthSpec(
            n_frames=args.frames,
            m_slides=args.slides,
            signal=args.signal,
            noise_sigma=args.noise_sigma,
            volatility=args.volatility,
            no_slide_fraction=args.no_slide_fraction,
            distractor_prob=args.distractor_prob,
            seed=seed,
        )
        truth, a, b, c = generate(spec)
        io.write_ground_truth(truth, lecture_dir / "truth.csv")
        io.write_similarity(a, lecture_dir / "text.csv")
        io.write_similarity(b, lecture_dir / "audio.csv")
        io.write_similarity(c, lecture_dir / "image.csv")
    _write_manifest(
        out_dir / "synth",
        "synth",
        {},
        {
            "frames": args.frames,
            "slides": args.slides,
            "signal": args.signal,
            "noise_sigma": args.noise_sigma,
            "volatility": args.volatility,
            "no_slide_fraction": args.no_slide_fraction,
            "distractor_prob": args.distractor_prob,
            "seed": args.seed,
            "count": args.count,
        },
        started,
    )
    return 0


def cmd_stats(args) -> int:
    truth = io.read_ground_truth(args.truth, total_slides=args.total_slides)
    doc = {
        "volatility": volatility_score(truth),
        "no_slide_ratio": no_slide_ratio(truth),
        "n_segments": truth.n_segments,
        "total_slides": truth.total_slides,
    }
    print(json.dumps(doc, indent=2))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mavils",
        description="Align lecture-video segments to lecture slides.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("similarity", help="cosine similarity matrix from embedding files")
    p.add_argument("frames", help="frame-side embedding file (.mvls)")
    p.add_argument("slides", help="slide-side embedding file (.mvls)")
    p.add_argument("out", help="output similarity matrix (.csv or .mvls)")
    p.set_defaults(func=cmd_similarity)

    p = sub.add_parser("align", help="decode the optimal slide sequence")
    p.add_argument("out", help="output alignment JSON")
    p.add_argument("--similarity", help="pre-combined similarity matrix")
    p.add_argument("--text", help="text similarity matrix")
    p.add_argument("--audio", help="audio similarity matrix")
    p.add_argument("--image", help="image similarity matrix")
    p.add_argument(
        "--method",
        choices=["mean", "max", "weighted"],
        default="mean",
        help="combination rule for the three modality matrices",
    )
    p.add_argument(
        "--weights",
        help="weights JSON for --method weighted; omitted: optimized on the fly",
    )
    _add_config_flags(p)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("optimize-weights", help="optimize modality weights per lecture")
    p.add_argument("text", help="text similarity matrix")
    p.add_argument("audio", help="audio similarity matrix")
    p.add_argument("image", help="image similarity matrix")
    p.add_argument("out", help="output weights JSON")
    p.add_argument("--learning-rate", type=float, default=0.001)
    p.add_argument("--iterations", type=int, default=50)
    _add_config_flags(p)
    p.set_defaults(func=cmd_optimize_weights)

    p = sub.add_parser("eval", help="score an alignment against ground truth")
    p.add_argument("alignment", help="alignment JSON")
    p.add_argument("truth", help="ground truth CSV")
    p.add_argument("out", help="output report JSON")
    p.add_argument("--total-slides", type=int, default=None, help="deck size (else sidecar)")
    p.add_argument("--lecture-id", default=None, help="row label for the summary CSV")
    p.add_argument("--summary-csv", default=None, help="summary CSV to append to")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="align+eval a corpus over a jump-weight grid")
    p.add_argument("corpus_dir", help="directory of lecture directories")
    p.add_argument("out", help="output CSV (rows = lectures, columns = jump weights)")
    p.add_argument("--lambda-jump-grid", default=DEFAULT_JUMP_GRID)
    p.add_argument("--method", choices=["mean", "max", "weighted"], default="mean")
    p.add_argument("--lambda-linear", type=float, default=0.0)
    p.add_argument(
        "--linear-mode", choices=["slide_deviation", "literal"], default="slide_deviation"
    )
    p.add_argument("--jump-mode", choices=["as_written", "swapped"], default="as_written")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("synth", help="generate synthetic lectures with planted truth")
    p.add_argument("out_dir", help="output directory")
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--slides", type=int, required=True)
    p.add_argument("--signal", type=float, default=1.0)
    p.add_argument("--noise-sigma", type=float, default=0.0)
    p.add_argument("--volatility", type=float, default=1.0)
    p.add_argument("--no-slide-fraction", type=float, default=0.0)
    p.add_argument("--distractor-prob", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1, help="lectures to generate (lec00, lec01, ...)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("stats", help="volatility and no-slide ratio of a ground truth file")
    p.add_argument("truth", help="ground truth CSV")
    p.add_argument("--total-slides", type=int, default=None)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
