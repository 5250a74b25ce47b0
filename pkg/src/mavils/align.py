"""Penalty functions and the dynamic-programming slide decoder.

The decoder fills a table D where D[i, j] is the best cumulative score of
any slide sequence for frames 0..i that ends on slide j:

    D[0, j] = S[0, j] - linear_penalty(0, j)
    D[i, j] = max_k( D[i-1, k] - jump_penalty(k, j) - linear_penalty(i, j) ) + S[i, j]

The jump penalty discourages slide transitions between consecutive frames,
asymmetrically by direction; the linear penalty discourages deviation from
a perfectly linear march through the deck. Ties in every max are broken
toward the smallest slide index, making the decoded path deterministic.

Slide indices are 1-based in all public interfaces; frame indices 0-based.

The forward pass is the hot loop (O(n*m^2)). A compiled kernel is used
when the `mavils._native` extension is importable, with a pure-numpy
fallback otherwise; set MAVILS_DP_BACKEND=python|native to force either.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _dp_py
from .matrix import SimilarityMatrix

try:
    from . import _native
except ImportError:
    _native = None

JUMP_MODES = ("as_written", "swapped")
LINEAR_MODES = ("slide_deviation", "literal")


def _select_backend() -> tuple:
    choice = os.environ.get("MAVILS_DP_BACKEND", "auto").strip().lower()
    if choice in ("native", "compiled"):
        if _native is None:
            raise ImportError(
                "MAVILS_DP_BACKEND=native but the compiled kernel is not built; "
                "run `python setup.py build_ext --inplace` or reinstall"
            )
        return _native.dp_forward, "native"
    if choice in ("python", "numpy"):
        return _dp_py.dp_forward, "python"
    if _native is not None:
        return _native.dp_forward, "native"
    return _dp_py.dp_forward, "python"


_DP_FORWARD, _BACKEND_NAME = _select_backend()


def dp_backend() -> str:
    """Name of the active forward-pass backend: "native" or "python"."""
    return _BACKEND_NAME


@dataclass(frozen=True)
class AlignmentConfig:
    """Decoder penalty weights and mode switches.

    lambda_jump weights the slide-transition penalty (default 0.1, the
    best-performing value on average across real lectures). lambda_linear
    weights the linear-progression penalty (default 0, the best setting
    on average).

    linear_penalty_mode: "slide_deviation" measures |expected slide - candidate
    slide| (the deviation that can actually steer the decoder); "literal"
    measures |expected slide - frame index|, which is constant across
    candidates and shifts all scores equally.

    jump_direction_mode: "as_written" doubles the penalty when the previous
    slide index k is below the candidate j (forward moves); "swapped"
    doubles the k > j case instead (backward moves). Both are exposed
    because either reading of "penalize backward transitions more" is
    defensible.
    """

    lambda_jump: float = 0.1
    lambda_linear: float = 0.0
    linear_penalty_mode: str = "slide_deviation"
    jump_direction_mode: str = "as_written"

    def __post_init__(self):
        if not (self.lambda_jump >= 0.0):
            raise ValueError(f"lambda_jump must be >= 0, got {self.lambda_jump}")
        if not (self.lambda_linear >= 0.0):
            raise ValueError(f"lambda_linear must be >= 0, got {self.lambda_linear}")
        if self.linear_penalty_mode not in LINEAR_MODES:
            raise ValueError(
                f"linear_penalty_mode must be one of {LINEAR_MODES}, got {self.linear_penalty_mode!r}"
            )
        if self.jump_direction_mode not in JUMP_MODES:
            raise ValueError(
                f"jump_direction_mode must be one of {JUMP_MODES}, got {self.jump_direction_mode!r}"
            )


@dataclass(frozen=True, eq=False)
class Alignment:
    """Decoded slide sequence for one lecture.

    Attributes:
        path: (n_frames,) array of 1-based slide indices.
        cumulative_score: optimal terminal value of the decision table.
        per_frame_scores: similarity of each frame to its decoded slide.
    """

    path: np.ndarray
    cumulative_score: float
    per_frame_scores: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, Alignment):
            return NotImplemented
        return (
            self.cumulative_score == other.cumulative_score
            and np.array_equal(self.path, other.path)
            and np.array_equal(self.per_frame_scores, other.per_frame_scores)
        )

    def __post_init__(self):
        path = np.asarray(self.path, dtype=np.int64).copy()
        scores = np.asarray(self.per_frame_scores, dtype=np.float64).copy()
        if path.ndim != 1 or path.size < 1:
            raise ValueError(f"path must be a non-empty 1-D sequence, got shape {path.shape}")
        if scores.shape != path.shape:
            raise ValueError(
                f"per_frame_scores length {scores.size} does not match path length {path.size}"
            )
        if path.min() < 1:
            raise ValueError(f"slide indices are 1-based; got {int(path.min())}")
        path.flags.writeable = False
        scores.flags.writeable = False
        object.__setattr__(self, "path", path)
        object.__setattr__(self, "per_frame_scores", scores)
        object.__setattr__(self, "cumulative_score", float(self.cumulative_score))

    @property
    def n_frames(self) -> int:
        return self.path.size


def jump_penalty(k: int, j: int, lambda_jump: float, mode: str = "as_written") -> float:
    """Penalty for moving from slide k (previous frame) to slide j.

    Proportional to the jump distance |k - j|, zero for staying put, with
    one direction penalized at twice the rate of the other depending on
    `mode` (see AlignmentConfig).
    """
    if mode not in JUMP_MODES:
        raise ValueError(f"mode must be one of {JUMP_MODES}, got {mode!r}")
    if k == j:
        return 0.0
    dist = float(abs(k - j))
    doubled = (k < j) if mode == "as_written" else (k > j)
    if doubled:
        return (2.0 * dist) * lambda_jump
    return dist * lambda_jump


def jump_penalty_matrix(m: int, lambda_jump: float, mode: str = "as_written") -> np.ndarray:
    """(m, m) table of jump_penalty(k, j) indexed by 0-based [k-1, j-1]."""
    if mode not in JUMP_MODES:
        raise ValueError(f"mode must be one of {JUMP_MODES}, got {mode!r}")
    k = np.arange(1, m + 1, dtype=np.float64)[:, None]
    j = np.arange(1, m + 1, dtype=np.float64)[None, :]
    dist = np.abs(k - j)
    doubled = (k < j) if mode == "as_written" else (k > j)
    return np.where(doubled, (2.0 * dist) * lambda_jump, dist * lambda_jump)


def expected_slide_index(i: int, n: int, m: int) -> float:
    """Slide a perfectly linear presenter would show at frame i (0-based).

    Computed as 1 + (m / (n - 1)) * i and clamped into [1, m]: the raw
    formula reaches m + 1 at the last frame, one past the deck.
    """
    if n < 2:
        raise ValueError("linear penalty undefined for single frame")
    if m < 1:
        raise ValueError(f"slide count must be >= 1, got {m}")
    if not (0 <= i < n):
        raise ValueError(f"frame index {i} out of range for {n} frames")
    e = 1.0 + (m / (n - 1)) * i
    return min(max(e, 1.0), float(m))


def linear_penalty(i: int, j: int, config: AlignmentConfig, n: int, m: int) -> float:
    """Penalty for frame i sitting on slide j instead of the expected slide.

    In "slide_deviation" mode the deviation is |e_i - j|; in "literal" mode
    it is |e_i - i|, which does not depend on the candidate slide. Zero
    whenever lambda_linear is zero, without evaluating e_i.
    """
    lam = config.lambda_linear
    if lam == 0.0:
        return 0.0
    e = expected_slide_index(i, n, m)
    if config.linear_penalty_mode == "slide_deviation":
        return abs(e - j) * lam
    return abs(e - i) * lam


def linear_penalty_matrix(n: int, m: int, config: AlignmentConfig) -> np.ndarray:
    """(n, m) table of linear_penalty(i, j); zeros when lambda_linear is 0."""
    lam = config.lambda_linear
    if lam == 0.0:
        return np.zeros((n, m), dtype=np.float64)
    if n < 2:
        raise ValueError("linear penalty undefined for single frame")
    e = 1.0 + (m / (n - 1)) * np.arange(n, dtype=np.float64)
    np.clip(e, 1.0, float(m), out=e)
    if config.linear_penalty_mode == "slide_deviation":
        j = np.arange(1, m + 1, dtype=np.float64)
        return np.abs(e[:, None] - j[None, :]) * lam
    i = np.arange(n, dtype=np.float64)
    row = np.abs(e - i) * lam
    return np.repeat(row[:, None], m, axis=1)


def dp_align(S: SimilarityMatrix, config: AlignmentConfig | None = None) -> Alignment:
    """Decode the optimal slide sequence for a similarity matrix.

    Runs the forward recurrence, then backtraces from the best terminal
    cell. O(n*m^2) time, O(n*m) space. Pure function: safe to call from
    many threads on shared inputs.

    Args:
        S: frame-by-slide similarity matrix.
        config: penalty weights and modes; defaults to AlignmentConfig().

    Returns:
        Alignment whose cumulative_score is the optimum of the table and
        whose path attains it.
    """
    if config is None:
        config = AlignmentConfig()
    n, m = S.shape
    P = jump_penalty_matrix(m, config.lambda_jump, config.jump_direction_mode)
    L = linear_penalty_matrix(n, m, config)
    d_last, back = _DP_FORWARD(S.values, P, L)

    j = int(np.argmax(d_last))
    path = np.empty(n, dtype=np.int64)
    path[n - 1] = j
    for i in range(n - 1, 0, -1):
        j = int(back[i, j])
        path[i - 1] = j
    path += 1

    per_frame = S.values[np.arange(n), path - 1]
    return Alignment(
        path=path,
        cumulative_score=float(d_last[path[n - 1] - 1]),
        per_frame_scores=per_frame,
    )


def score_path(S: SimilarityMatrix, path, config: AlignmentConfig | None = None) -> float:
    """Recompute the cumulative score of a given 1-based slide path.

    Applies the recurrence along the fixed path with the same operation
    order as the decoder, so a decoded path recomputes to exactly its
    reported cumulative_score.
    """
    if config is None:
        config = AlignmentConfig()
    n, m = S.shape
    path = np.asarray(path, dtype=np.int64)
    if path.shape != (n,):
        raise ValueError(f"path length {path.size} does not match {n} frames")
    if path.min() < 1 or path.max() > m:
        raise ValueError(f"path entries must lie in [1, {m}]")
    vals = S.values
    acc = vals[0, path[0] - 1] - linear_penalty(0, int(path[0]), config, n, m)
    for i in range(1, n):
        j = int(path[i])
        acc = (
            (acc - jump_penalty(int(path[i - 1]), j, config.lambda_jump, config.jump_direction_mode))
            - linear_penalty(i, j, config, n, m)
        ) + vals[i, j - 1]
    return float(acc)
