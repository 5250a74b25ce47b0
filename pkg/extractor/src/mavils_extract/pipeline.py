"""Full extraction pipeline: raw lecture materials to embedding files.

From a video, a PDF slide deck, and a sentence-level transcript, produces
the six embedding files the alignment engine consumes:

    frames_text.mvls    OCR text of each sampled frame, embedded
    frames_audio.mvls   each transcript sentence, embedded
    frames_image.mvls   each sampled frame, embedded
    slides_text.mvls    OCR text of each rendered PDF page, embedded
    slides_image.mvls   each rendered PDF page, embedded
    slides_audio.mvls   slide-side text embeddings reused for the audio
                        channel (same values, audio modality byte)

The audio channel compares spoken sentences against slide text, so its
slide side reuses the OCR-text embeddings instead of recomputing them;
the manifest records this.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .embed import DEFAULT_IMAGE_MODEL, DEFAULT_TEXT_MODEL, get_image_embedder, get_text_embedder
from .frames import extract_frames
from .mvls import write_embedding_file
from .ocr import DEFAULT_OCR, get_ocr_engine, ocr_texts
from .pdfpages import open_pdf
from .segments import load_transcript

OUTPUT_FILES = (
    "frames_text.mvls",
    "frames_audio.mvls",
    "frames_image.mvls",
    "slides_text.mvls",
    "slides_image.mvls",
    "slides_audio.mvls",
)


@dataclass(frozen=True)
class ExtractorConfig:
    """Engine choices and sampling options for one extraction run."""

    text_model_id: str = DEFAULT_TEXT_MODEL
    image_model_id: str = DEFAULT_IMAGE_MODEL
    ocr_engine_id: str = DEFAULT_OCR
    frame_sample_policy: str = "midpoint"
    render_dpi: int = 150
    pdf_renderer: str = "auto"

    def __post_init__(self):
        if self.frame_sample_policy not in ("midpoint", "start"):
            raise ValueError(f"frame_sample_policy must be midpoint or start, got {self.frame_sample_policy!r}")
        if self.render_dpi < 1:
            raise ValueError(f"render_dpi must be >= 1, got {self.render_dpi}")


def run_pipeline(video, pdf, transcript, out_dir, config: ExtractorConfig | None = None) -> dict:
    """Run the extraction end to end; returns the manifest dictionary.

    Raises ValueError/RuntimeError on missing inputs, undecodable media, or
    unavailable engines. Output is deterministic for fixed inputs, config,
    and pinned models.
    """
    if config is None:
        config = ExtractorConfig()
    video, pdf, transcript = Path(video), Path(pdf), Path(transcript)
    for path, label in ((video, "video"), (pdf, "pdf"), (transcript, "transcript")):
        if not path.exists():
            raise ValueError(f"{label} file not found: {path}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()

    segments = load_transcript(transcript)
    deck = open_pdf(pdf, renderer=config.pdf_renderer)

    ocr_engine = get_ocr_engine(config.ocr_engine_id)
    text_embedder = get_text_embedder(config.text_model_id)
    image_embedder = get_image_embedder(config.image_model_id)

    frames = extract_frames(video, segments, policy=config.frame_sample_policy)
    pages = [deck.render(i, dpi=config.render_dpi) for i in range(deck.page_count)]

    frame_texts = ocr_texts(frames, ocr_engine)
    slide_texts = ocr_texts(pages, ocr_engine)

    frames_text = text_embedder.embed(frame_texts)
    frames_audio = text_embedder.embed(segments.sentences())
    frames_image = image_embedder.embed(frames)
    slides_text = text_embedder.embed(slide_texts)
    slides_image = image_embedder.embed(pages)

    write_embedding_file(out_dir / "frames_text.mvls", frames_text, "frame", "text")
    write_embedding_file(out_dir / "frames_audio.mvls", frames_audio, "frame", "audio")
    write_embedding_file(out_dir / "frames_image.mvls", frames_image, "frame", "image")
    write_embedding_file(out_dir / "slides_text.mvls", slides_text, "slide", "text")
    write_embedding_file(out_dir / "slides_image.mvls", slides_image, "slide", "image")
    # audio channel, slide side: same embeddings as slides_text by design
    write_embedding_file(out_dir / "slides_audio.mvls", slides_text, "slide", "audio")

    manifest = {
        "command": "extract",
        "inputs": {"video": str(video), "pdf": str(pdf), "transcript": str(transcript)},
        "config": {
            "text_model_id": config.text_model_id,
            "image_model_id": config.image_model_id,
            "ocr_engine_id": config.ocr_engine_id,
            "frame_sample_policy": config.frame_sample_policy,
            "render_dpi": config.render_dpi,
            "pdf_renderer": config.pdf_renderer,
        },
        "n_segments": len(segments),
        "n_slides": deck.page_count,
        "outputs": list(OUTPUT_FILES),
        "slides_audio_reuses_slide_text_embeddings": True,
        "tool_version": __version__,
        "duration_seconds": time.perf_counter() - started,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return manifest
