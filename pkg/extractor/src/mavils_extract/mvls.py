"""Writer for the MVLS embedding container consumed by the alignment engine.

Implemented against the published byte layout (all integers little-endian):

    magic "MVLS" | version uint32 = 1 | rows uint32 | dims uint32 |
    kind uint8 (0 frame, 1 slide) | modality uint8 (0 text, 1 audio, 2 image) |
    rows * dims float32 payload, row-major

This module deliberately re-implements the format rather than importing the
engine: the byte layout is the contract between the two packages.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"MVLS"
VERSION = 1
_HEADER = struct.Struct("<4sIIIBB")

KIND_CODES = {"frame": 0, "slide": 1}
MODALITY_CODES = {"text": 0, "audio": 1, "image": 2}


def write_embedding_file(path, values: np.ndarray, kind: str, modality: str) -> None:
    """Write an embedding matrix (rows x dims) to the binary container."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
        raise ValueError(f"embedding matrix must be 2-D and non-empty, got shape {values.shape}")
    if not np.isfinite(values).all():
        raise ValueError("embedding matrix contains non-finite values")
    if kind not in KIND_CODES:
        raise ValueError(f"kind must be one of {sorted(KIND_CODES)}, got {kind!r}")
    if modality not in MODALITY_CODES:
        raise ValueError(f"modality must be one of {sorted(MODALITY_CODES)}, got {modality!r}")
    rows, dims = values.shape
    header = _HEADER.pack(MAGIC, VERSION, rows, dims, KIND_CODES[kind], MODALITY_CODES[modality])
    Path(path).write_bytes(header + values.astype("<f4").tobytes())
