"""Shared fixture: a tiny synthetic lecture (3 slides, 5 segments)."""

import csv

import cv2
import numpy as np
import pytest

from mavils_extract import ExtractorConfig, render_text_image, write_image_pdf

FPS = 10.0
SEGMENT_SECONDS = 5.0
SLIDE_TEXTS = ("ALPHA INTRO", "BETA METHODS", "GAMMA RESULTS")
SENTENCES = (
    "welcome to the lecture",
    "first we cover alpha",
    "now on to beta",
    "beta has more detail",
    "finally gamma concludes",
)
SLIDE_SCHEDULE = (0, 0, 1, 1, 2)  # slide index shown during each segment

OFFLINE_CONFIG = ExtractorConfig(
    text_model_id="hash-ngram-256",
    image_model_id="patch-stats-8",
    ocr_engine_id="boxfont",
    pdf_renderer="image-pdf",
)


def slide_page(text: str, height: int = 240, width: int = 320) -> np.ndarray:
    """White RGB page with the text rendered in the built-in font."""
    img = render_text_image(text, scale=4, margin=10)
    page = np.full((height, width), 255, dtype=np.uint8)
    h = min(img.shape[0], height - 20)
    w = min(img.shape[1], width - 20)
    page[10 : 10 + h, 10 : 10 + w] = img[:h, :w]
    return np.stack([page] * 3, axis=2)


@pytest.fixture(scope="session")
def fixture_lecture(tmp_path_factory):
    """Paths of a 3-slide, 5-segment lecture: video, pdf, transcript."""
    root = tmp_path_factory.mktemp("lecture")
    pages = [slide_page(text) for text in SLIDE_TEXTS]

    pdf_path = root / "slides.pdf"
    write_image_pdf(pages, pdf_path, dpi=150)

    video_path = root / "lecture.avi"
    writer = cv2.VideoWriter(
        str(video_path), cv2.VideoWriter_fourcc(*"MJPG"), FPS, (320, 240)
    )
    assert writer.isOpened()
    for slide_idx in SLIDE_SCHEDULE:
        bgr = cv2.cvtColor(pages[slide_idx], cv2.COLOR_RGB2BGR)
        for _ in range(int(SEGMENT_SECONDS * FPS)):
            writer.write(bgr)
    writer.release()

    transcript_path = root / "transcript.csv"
    with open(transcript_path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, quoting=csv.QUOTE_NONNUMERIC)
        w.writerow(["start", "end", "sentence"])
        for i, sentence in enumerate(SENTENCES):
            w.writerow([i * SEGMENT_SECONDS, (i + 1) * SEGMENT_SECONDS, sentence])

    return {"video": video_path, "pdf": pdf_path, "transcript": transcript_path, "root": root}
