"""Embedding containers and similarity-matrix construction.

Embeddings are stored row-major (one row per frame or slide) and compared
with cosine similarity. Similarity values always live in [-1, 1]; values
marginally outside the range (floating-point round-off) are clamped on
construction, while NaN/Inf are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

Kind = Literal["frame", "slide"]
Modality = Literal["text", "audio", "image"]

KINDS = ("frame", "slide")
MODALITIES = ("text", "audio", "image")


def _as_readonly_2d(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, order="C", copy=True)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be at least 1x1, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class EmbeddingMatrix:
    """Row-major matrix of feature vectors for frames or slides.

    Attributes:
        data: (rows, dims) float64 array, one embedding per row. Read-only.
        kind: whether rows are video frames or slide pages.
        modality: feature channel the embeddings were computed from.
    """

    data: np.ndarray
    kind: Kind
    modality: Modality

    def __eq__(self, other):
        if not isinstance(other, EmbeddingMatrix):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.modality == other.modality
            and np.array_equal(self.data, other.data)
        )

    def __post_init__(self):
        arr = _as_readonly_2d(self.data, "embedding data")
        bad = ~np.isfinite(arr)
        if bad.any():
            row = int(np.argwhere(bad)[0][0])
            raise ValueError(f"non-finite embedding value in row {row}")
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.modality not in MODALITIES:
            raise ValueError(f"modality must be one of {MODALITIES}, got {self.modality!r}")
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def dims(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """n_frames x m_slides matrix of frame-to-slide similarity scores.

    Values are clamped into [-1, 1] on construction; NaN/Inf are rejected
    with the offending (row, column) location. The array is read-only so
    instances can be shared across threads.
    """

    values: np.ndarray
    modality_tag: str = ""

    def __eq__(self, other):
        if not isinstance(other, SimilarityMatrix):
            return NotImplemented
        return self.modality_tag == other.modality_tag and np.array_equal(
            self.values, other.values
        )

    def __post_init__(self):
        arr = _as_readonly_2d(self.values, "similarity values")
        bad = ~np.isfinite(arr)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise ValueError(f"non-finite similarity at ({int(i)}, {int(j)})")
        if arr.min() < -1.0 or arr.max() > 1.0:
            arr = np.clip(arr, -1.0, 1.0)
            arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def n_frames(self) -> int:
        return self.values.shape[0]

    @property
    def m_slides(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def cosine_similarity_matrix(frames: EmbeddingMatrix, slides: EmbeddingMatrix) -> SimilarityMatrix:
    """Cosine similarity between every frame embedding and every slide embedding.

    Rows with zero norm (e.g. OCR found no text on a blank frame) yield
    similarity 0 for every pairing: absence of evidence, not an error.

    Args:
        frames: frame-side embeddings, kind "frame".
        slides: slide-side embeddings, kind "slide".

    Returns:
        (frames.rows, slides.rows) similarity matrix tagged with the frame
        embeddings' modality.

    Raises:
        ValueError: if kinds are wrong or embedding dims differ.
    """
    if frames.kind != "frame":
        raise ValueError(f"first argument must have kind 'frame', got {frames.kind!r}")
    if slides.kind != "slide":
        raise ValueError(f"second argument must have kind 'slide', got {slides.kind!r}")
    if frames.dims != slides.dims:
        raise ValueError(
            f"embedding dims differ: frames have {frames.dims}, slides have {slides.dims}"
        )
    f = frames.data
    s = slides.data
    dots = f @ s.T
    denom = np.outer(np.linalg.norm(f, axis=1), np.linalg.norm(s, axis=1))
    sims = np.divide(dots, denom, out=np.zeros_like(dots), where=denom > 0.0)
    np.clip(sims, -1.0, 1.0, out=sims)
    return SimilarityMatrix(sims, modality_tag=frames.modality)


def clamp_similarity(raw, modality_tag: str | None = None) -> SimilarityMatrix:
    """Clamp raw similarity values into [-1, 1] and wrap them.

    Accepts a SimilarityMatrix (returned re-clamped, tag preserved) or any
    2-D array-like. NaN/Inf raise with the offending (row, column) location.
    """
    if isinstance(raw, SimilarityMatrix):
        tag = raw.modality_tag if modality_tag is None else modality_tag
        return SimilarityMatrix(raw.values, modality_tag=tag)
    return SimilarityMatrix(np.asarray(raw, dtype=np.float64), modality_tag=modality_tag or "")
