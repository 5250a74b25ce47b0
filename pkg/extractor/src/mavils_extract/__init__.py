"""Turn raw lecture materials into the embedding files the engine aligns.

Pipeline: sample one video frame per transcript sentence, rasterize the
PDF deck, OCR frames and pages, embed texts and images, and write the six
MVLS embedding files (frame and slide sides of the text, audio, and image
channels).
"""

__version__ = "0.1.0"

from .embed import (
    HashTextEmbedder,
    PatchImageEmbedder,
    embed_images,
    embed_texts,
    get_image_embedder,
    get_text_embedder,
)
from .frames import extract_frames
from .glyphs import render_text_image
from .mvls import write_embedding_file
from .ocr import TemplateOcr, get_ocr_engine, ocr_texts
from .pdfpages import ImagePdfPages, open_pdf, write_image_pdf
from .pipeline import ExtractorConfig, run_pipeline
from .segments import Segment, SegmentIndex, load_transcript

__all__ = [
    "ExtractorConfig",
    "HashTextEmbedder",
    "ImagePdfPages",
    "PatchImageEmbedder",
    "Segment",
    "SegmentIndex",
    "TemplateOcr",
    "embed_images",
    "embed_texts",
    "extract_frames",
    "get_image_embedder",
    "get_ocr_engine",
    "get_text_embedder",
    "load_transcript",
    "ocr_texts",
    "open_pdf",
    "render_text_image",
    "run_pipeline",
    "write_embedding_file",
    "write_image_pdf",
    "__version__",
]
