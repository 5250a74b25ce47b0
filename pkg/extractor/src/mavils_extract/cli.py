"""Command-line interface: `mavils-extract run`.

Exit codes follow the engine's convention: 0 success, 2 usage/validation
error, 1 internal error.
"""

from __future__ import annotations

import argparse
import sys
import traceback

from .pipeline import ExtractorConfig, run_pipeline


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mavils-extract",
        description="Turn a lecture (video, PDF slides, transcript) into embedding files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run the full extraction pipeline")
    p.add_argument("--video", required=True, help="lecture video file")
    p.add_argument("--pdf", required=True, help="slide deck PDF")
    p.add_argument("--transcript", required=True, help="transcript CSV (start,end,sentence)")
    p.add_argument("--out", required=True, help="output directory for the .mvls files")
    p.add_argument("--text-model", default=None, help="text embedding model id")
    p.add_argument("--image-model", default=None, help="image embedding model id")
    p.add_argument("--ocr", default=None, help="OCR engine id (tesseract, boxfont)")
    p.add_argument("--frame-policy", choices=["midpoint", "start"], default="midpoint")
    p.add_argument("--render-dpi", type=int, default=150)
    p.add_argument("--pdf-renderer", choices=["auto", "pdfium", "image-pdf"], default="auto")
    p.set_defaults(func=_cmd_run)
    return parser


def _cmd_run(args) -> int:
    kwargs = {}
    if args.text_model:
        kwargs["text_model_id"] = args.text_model
    if args.image_model:
        kwargs["image_model_id"] = args.image_model
    if args.ocr:
        kwargs["ocr_engine_id"] = args.ocr
    config = ExtractorConfig(
        frame_sample_policy=args.frame_policy,
        render_dpi=args.render_dpi,
        pdf_renderer=args.pdf_renderer,
        **kwargs,
    )
    manifest = run_pipeline(args.video, args.pdf, args.transcript, args.out, config)
    print(f"wrote {len(manifest['outputs'])} files to {args.out} "
          f"({manifest['n_segments']} segments, {manifest['n_slides']} slides)")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
