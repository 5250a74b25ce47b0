"""File formats for embeddings, similarity matrices, ground truth, and alignments.

Binary container (.mvls), all integers little-endian:

    offset  size  field
    0       4     magic "MVLS"
    4       4     version, uint32 (currently 1)
    8       4     rows, uint32
    12      4     dims, uint32
    16      1     kind, uint8: 0 = frame, 1 = slide, 2 = similarity
    17      1     modality, uint8: 0 = text, 1 = audio, 2 = image, 255 = other
    18      -     payload: rows * dims IEEE-754 float32 values, row-major

Values are stored as 32-bit reals (halving file size for long embedding
vectors) and widened to 64-bit in memory. For a similarity container
(kind 2), rows is the frame count and dims the slide count.

Similarity matrices are also readable/writable as CSV (one row per frame,
comma-separated decimals); ground truth is CSV with header
`start,end,sentence,slide`; alignments are JSON. Readers never silently
repair structural errors — the only tolerated repair is clamping
similarity values into [-1, 1] on read, which emits a warning.
"""

from __future__ import annotations

import csv
import json
import struct
import warnings
from pathlib import Path

import numpy as np

from .align import Alignment, AlignmentConfig
from .evaluate import GroundTruth, Segment
from .matrix import EmbeddingMatrix, SimilarityMatrix

MAGIC = b"MVLS"
VERSION = 1
_HEADER = struct.Struct("<4sIIIBB")

KIND_CODES = {"frame": 0, "slide": 1}
KIND_NAMES = {0: "frame", 1: "slide"}
SIMILARITY_KIND = 2
MODALITY_CODES = {"text": 0, "audio": 1, "image": 2}
MODALITY_NAMES = {0: "text", 1: "audio", 2: "image"}
OTHER_MODALITY = 255

GROUND_TRUTH_HEADER = ["start", "end", "sentence", "slide"]


class SimilarityClampWarning(UserWarning):
    """Similarity values outside [-1, 1] were clamped on read."""


def _read_header(f, path) -> tuple[int, int, int, int]:
    raw = f.read(_HEADER.size)
    if len(raw) < _HEADER.size:
        raise ValueError(f"{path}: truncated header: got {len(raw)} of {_HEADER.size} bytes")
    magic, version, rows, dims, kind, modality = _HEADER.unpack(raw)
    if magic != MAGIC:
        raise ValueError(f"{path}: not an embedding file: bad magic {magic!r}")
    if version != VERSION:
        raise ValueError(f"{path}: unsupported version {version} (expected {VERSION})")
    return rows, dims, kind, modality


def _read_payload(f, path, rows: int, dims: int) -> np.ndarray:
    expected = rows * dims * 4
    payload = f.read()
    if len(payload) != expected:
        kind = "truncated" if len(payload) < expected else "oversized"
        raise ValueError(f"{path}: {kind} payload: expected {expected} bytes, got {len(payload)}")
    return np.frombuffer(payload, dtype="<f4").reshape(rows, dims)


def write_embeddings(matrix: EmbeddingMatrix, path) -> None:
    """Write an embedding matrix to the binary container."""
    header = _HEADER.pack(
        MAGIC,
        VERSION,
        matrix.rows,
        matrix.dims,
        KIND_CODES[matrix.kind],
        MODALITY_CODES[matrix.modality],
    )
    payload = matrix.data.astype("<f4").tobytes()
    Path(path).write_bytes(header + payload)


def read_embeddings(path) -> EmbeddingMatrix:
    """Read an embedding matrix, validating magic, version, and payload length."""
    with open(path, "rb") as f:
        rows, dims, kind, modality = _read_header(f, path)
        if kind not in KIND_NAMES:
            raise ValueError(f"{path}: kind byte {kind} is not an embedding kind (0 or 1)")
        if modality not in MODALITY_NAMES:
            raise ValueError(f"{path}: unknown modality byte {modality}")
        data = _read_payload(f, path, rows, dims)
    finite_rows = np.isfinite(data).all(axis=1) if data.size else np.ones(0, dtype=bool)
    if not finite_rows.all():
        row = int(np.argmin(finite_rows))
        raise ValueError(f"{path}: non-finite value in payload row {row}")
    return EmbeddingMatrix(
        data=data.astype(np.float64),
        kind=KIND_NAMES[kind],
        modality=MODALITY_NAMES[modality],
    )


def _clamp_on_read(values: np.ndarray, path) -> np.ndarray:
    out_of_range = (values < -1.0) | (values > 1.0)
    count = int(np.count_nonzero(out_of_range))
    if count:
        i, j = np.argwhere(out_of_range)[0]
        warnings.warn(
            f"{path}: clamped {count} similarity value(s) into [-1, 1] "
            f"(first at row {int(i)}, column {int(j)})",
            SimilarityClampWarning,
            stacklevel=3,
        )
        values = np.clip(values, -1.0, 1.0)
    return values


def write_similarity(matrix: SimilarityMatrix, path, binary: bool | None = None) -> None:
    """Write a similarity matrix as CSV, or as a binary container.

    Format defaults by extension: `.mvls` means binary, anything else CSV.
    """
    path = Path(path)
    if binary is None:
        binary = path.suffix == ".mvls"
    if binary:
        code = MODALITY_CODES.get(matrix.modality_tag, OTHER_MODALITY)
        header = _HEADER.pack(
            MAGIC, VERSION, matrix.n_frames, matrix.m_slides, SIMILARITY_KIND, code
        )
        path.write_bytes(header + matrix.values.astype("<f4").tobytes())
        return
    lines = [",".join(repr(float(v)) for v in row) for row in matrix.values]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_similarity(path) -> SimilarityMatrix:
    """Read a similarity matrix from CSV or the binary container.

    The two formats are distinguished by the magic bytes. Out-of-range
    values are clamped with a SimilarityClampWarning; NaN is an error.
    """
    path = Path(path)
    with open(path, "rb") as f:
        sniff = f.read(4)
    if sniff == MAGIC:
        with open(path, "rb") as f:
            rows, dims, kind, modality = _read_header(f, path)
            if kind != SIMILARITY_KIND:
                raise ValueError(
                    f"{path}: kind byte {kind} is not a similarity container (expected {SIMILARITY_KIND})"
                )
            data = _read_payload(f, path, rows, dims)
        values = data.astype(np.float64)
        tag = MODALITY_NAMES.get(modality, "")
    else:
        values, tag = _parse_similarity_csv(path), ""
    bad = ~np.isfinite(values)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise ValueError(f"{path}: non-finite similarity at row {int(i)}, column {int(j)}")
    values = _clamp_on_read(values, path)
    return SimilarityMatrix(values, modality_tag=tag)


def _parse_similarity_csv(path) -> np.ndarray:
    rows: list[list[float]] = []
    width = None
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise ValueError(
                    f"{path}: ragged row at row {lineno}: expected {width} values, got {len(fields)}"
                )
            try:
                rows.append([float(v) for v in fields])
            except ValueError as exc:
                raise ValueError(f"{path}: bad value at row {lineno}: {exc}") from None
    if not rows:
        raise ValueError(f"{path}: empty similarity file")
    return np.array(rows, dtype=np.float64)


def write_ground_truth(truth: GroundTruth, path, sidecar: bool = True) -> None:
    """Write ground truth as CSV; optionally a sidecar with the deck size."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, quoting=csv.QUOTE_NONNUMERIC)
        writer.writerow(GROUND_TRUTH_HEADER)
        for seg in truth.segments:
            writer.writerow([seg.start_time, seg.end_time, seg.sentence, seg.slide_label])
    if sidecar:
        sidecar_path = Path(str(path) + ".meta.json")
        sidecar_path.write_text(json.dumps({"total_slides": truth.total_slides}) + "\n")


def read_ground_truth(path, total_slides: int | None = None) -> GroundTruth:
    """Read labeled segments from CSV.

    The deck size comes from the `total_slides` argument or, failing that,
    from a `<path>.meta.json` sidecar; one of the two is required to
    validate label ranges.
    """
    path = Path(path)
    if total_slides is None:
        sidecar = Path(str(path) + ".meta.json")
        if sidecar.exists():
            total_slides = int(json.loads(sidecar.read_text())["total_slides"])
        else:
            raise ValueError(
                f"{path}: total_slides not given and no sidecar {sidecar.name} found"
            )
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty ground truth file") from None
        if [h.strip() for h in header] != GROUND_TRUTH_HEADER:
            raise ValueError(
                f"{path}: bad header {header!r}, expected {','.join(GROUND_TRUTH_HEADER)}"
            )
        segments = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise ValueError(f"{path}: line {lineno}: expected 4 fields, got {len(row)}")
            try:
                start, end = float(row[0]), float(row[1])
                label = int(row[3])
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from None
            segments.append(Segment(start, end, row[2], label))
    if not segments:
        raise ValueError(f"{path}: ground truth file contains no segments")
    return GroundTruth(segments=tuple(segments), total_slides=total_slides)


def write_alignment(alignment: Alignment, path, config: AlignmentConfig | None = None) -> None:
    """Write a decoded alignment (with the penalties that produced it) as JSON."""
    if config is None:
        config = AlignmentConfig()
    doc = {
        "lambda_jump": config.lambda_jump,
        "lambda_linear": config.lambda_linear,
        "cumulative_score": alignment.cumulative_score,
        "frames": [
            {"index": i, "slide": int(slide), "score": float(score)}
            for i, (slide, score) in enumerate(zip(alignment.path, alignment.per_frame_scores))
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def read_alignment(path) -> tuple[Alignment, AlignmentConfig]:
    """Read an alignment JSON back into (Alignment, AlignmentConfig)."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if "frames" not in doc:
        raise ValueError(f"{path}: missing 'frames' key")
    frames = doc["frames"]
    if not isinstance(frames, list) or not frames:
        raise ValueError(f"{path}: 'frames' must be a non-empty list")
    path_arr = np.empty(len(frames), dtype=np.int64)
    scores = np.empty(len(frames), dtype=np.float64)
    for pos, frame in enumerate(frames):
        if frame.get("index") != pos:
            raise ValueError(f"{path}: frame indices must be 0..n-1 in order (position {pos})")
        slide = int(frame["slide"])
        if slide < 1:
            raise ValueError(f"{path}: slide {slide} at frame {pos} (slides are 1-based)")
        path_arr[pos] = slide
        scores[pos] = float(frame["score"])
    alignment = Alignment(
        path=path_arr,
        cumulative_score=float(doc["cumulative_score"]),
        per_frame_scores=scores,
    )
    config = AlignmentConfig(
        lambda_jump=float(doc["lambda_jump"]),
        lambda_linear=float(doc["lambda_linear"]),
    )
    return alignment, config
