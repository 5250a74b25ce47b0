"""Fuse per-modality similarity matrices into one matrix.

Three combination rules: element-wise mean, element-wise max, and a
weighted sum with weights constrained to the probability simplex. The
weighted variant can optimize its weights per lecture by subgradient
ascent on the decoder's cumulative score, using Adam.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .align import AlignmentConfig, dp_align
from .matrix import SimilarityMatrix

SIMPLEX_TOL = 1e-9


@dataclass(frozen=True)
class ModalityWeights:
    """Convex weights for the text, audio, and image similarity matrices.

    Non-negative and summing to 1, so the fused matrix stays comparable to
    the single-modality matrices. Defaults to the uniform weights used to
    initialize optimization.
    """

    w_text: float = 1.0 / 3.0
    w_audio: float = 1.0 / 3.0
    w_image: float = 1.0 / 3.0

    def __post_init__(self):
        w = (self.w_text, self.w_audio, self.w_image)
        if any(x < 0.0 for x in w):
            raise ValueError(f"weights must be non-negative, got {w}")
        total = self.w_text + self.w_audio + self.w_image
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise ValueError(f"weights must sum to 1 (got {total!r})")

    def as_array(self) -> np.ndarray:
        return np.array([self.w_text, self.w_audio, self.w_image], dtype=np.float64)


@dataclass(frozen=True)
class OptimizerSettings:
    """Adam hyperparameters for per-lecture weight optimization."""

    learning_rate: float = 0.001
    iterations: int = 50
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_epsilon: float = 1e-8

    def __post_init__(self):
        if self.learning_rate <= 0.0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not (0.0 <= self.adam_beta1 < 1.0 and 0.0 <= self.adam_beta2 < 1.0):
            raise ValueError("adam betas must lie in [0, 1)")
        if self.adam_epsilon <= 0.0:
            raise ValueError(f"adam_epsilon must be > 0, got {self.adam_epsilon}")


def _check_same_shape(matrices: Sequence[SimilarityMatrix]) -> tuple[int, int]:
    if len(matrices) < 1:
        raise ValueError("need at least one similarity matrix")
    shape = matrices[0].shape
    for idx, mat in enumerate(matrices[1:], start=1):
        if mat.shape != shape:
            raise ValueError(
                f"similarity matrix dimensions differ: matrix 0 is {shape}, matrix {idx} is {mat.shape}"
            )
    return shape


def combine_mean(matrices: Sequence[SimilarityMatrix]) -> SimilarityMatrix:
    """Element-wise arithmetic mean of equally-shaped similarity matrices."""
    _check_same_shape(matrices)
    stacked = np.stack([m.values for m in matrices])
    return SimilarityMatrix(stacked.mean(axis=0), modality_tag="mean")


def combine_max(matrices: Sequence[SimilarityMatrix]) -> SimilarityMatrix:
    """Element-wise maximum of equally-shaped similarity matrices."""
    _check_same_shape(matrices)
    stacked = np.stack([m.values for m in matrices])
    return SimilarityMatrix(stacked.max(axis=0), modality_tag="max")


def combine_weighted(
    A: SimilarityMatrix,
    B: SimilarityMatrix,
    C: SimilarityMatrix,
    w: ModalityWeights,
) -> SimilarityMatrix:
    """Weighted sum w_text*A + w_audio*B + w_image*C.

    With w on the simplex this is a convex combination, so values stay in
    [-1, 1] when the inputs do.
    """
    _check_same_shape((A, B, C))
    fused = w.w_text * A.values + w.w_audio * B.values + w.w_image * C.values
    return SimilarityMatrix(fused, modality_tag="weighted")


def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection of a vector onto the probability simplex."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1, dtype=np.float64)
    rho = np.nonzero(u - css / idx > 0.0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def optimize_weights(
    A: SimilarityMatrix,
    B: SimilarityMatrix,
    C: SimilarityMatrix,
    config: AlignmentConfig | None = None,
    settings: OptimizerSettings | None = None,
) -> tuple[ModalityWeights, list[float]]:
    """Optimize modality weights to maximize the decoder's cumulative score.

    Each iteration fuses the matrices with the current weights, decodes the
    optimal path, and evaluates the cumulative score as the objective. The
    objective is piecewise linear in the weights, and along the decoded
    path the penalties do not depend on them, so the exact subgradient is
    the per-modality similarity summed over the path. Adam takes an ascent
    step and the weights are projected back onto the simplex.

    Subgradient ascent is not monotone, so the weights from the
    best-scoring iteration are returned rather than the last ones.

    Args:
        A, B, C: text, audio, and image similarity matrices (same shape).
        config: decoder configuration used to score candidate weightings.
        settings: Adam hyperparameters.

    Returns:
        (weights, trace): best-iterate weights and the per-iteration
        objective values.

    Raises:
        ValueError: on dimension mismatch or a non-finite objective.
    """
    if config is None:
        config = AlignmentConfig()
    if settings is None:
        settings = OptimizerSettings()
    n, _ = _check_same_shape((A, B, C))

    w = np.full(3, 1.0 / 3.0)
    m1 = np.zeros(3)
    m2 = np.zeros(3)
    rows = np.arange(n)

    best_w = w.copy()
    best_obj = -math.inf
    trace: list[float] = []

    for t in range(1, settings.iterations + 1):
        fused = combine_weighted(A, B, C, ModalityWeights(*w))
        alignment = dp_align(fused, config)
        obj = alignment.cumulative_score
        if not math.isfinite(obj):
            raise ValueError(f"non-finite objective at iteration {t}: {obj!r}")
        trace.append(obj)
        if obj > best_obj:
            best_obj = obj
            best_w = w.copy()

        cols = alignment.path - 1
        grad = np.array(
            [
                A.values[rows, cols].sum(),
                B.values[rows, cols].sum(),
                C.values[rows, cols].sum(),
            ]
        )

        m1 = settings.adam_beta1 * m1 + (1.0 - settings.adam_beta1) * grad
        m2 = settings.adam_beta2 * m2 + (1.0 - settings.adam_beta2) * (grad * grad)
        m1_hat = m1 / (1.0 - settings.adam_beta1**t)
        m2_hat = m2 / (1.0 - settings.adam_beta2**t)
        w = w + settings.learning_rate * m1_hat / (np.sqrt(m2_hat) + settings.adam_epsilon)
        w = project_to_simplex(w)

    return ModalityWeights(*(float(x) for x in best_w)), trace
