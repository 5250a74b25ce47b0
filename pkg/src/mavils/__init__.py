"""Align lecture-video segments to lecture slides.

Per-modality similarity matrices (OCR text, audio transcript, image
features) are fused and decoded into the optimal slide sequence with a
penalty-regularized dynamic program; the evaluation harness scores decoded
alignments against manually labeled ground truth.
"""

from .align import (
    Alignment,
    AlignmentConfig,
    dp_align,
    dp_backend,
    expected_slide_index,
    jump_penalty,
    jump_penalty_matrix,
    linear_penalty,
    linear_penalty_matrix,
    score_path,
)
from .combine import (
    ModalityWeights,
    OptimizerSettings,
    combine_max,
    combine_mean,
    combine_weighted,
    optimize_weights,
    project_to_simplex,
)
from .evaluate import (
    NO_SLIDE,
    EvalReport,
    GroundTruth,
    Segment,
    no_slide_ratio,
    pearson_r,
    score_alignment,
    volatility_score,
)
from .matrix import (
    EmbeddingMatrix,
    SimilarityMatrix,
    clamp_similarity,
    cosine_similarity_matrix,
)
from .synth import SynthSpec, generate

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "AlignmentConfig",
    "EmbeddingMatrix",
    "EvalReport",
    "GroundTruth",
    "ModalityWeights",
    "NO_SLIDE",
    "OptimizerSettings",
    "Segment",
    "SimilarityMatrix",
    "SynthSpec",
    "clamp_similarity",
    "combine_max",
    "combine_mean",
    "combine_weighted",
    "cosine_similarity_matrix",
    "dp_align",
    "dp_backend",
    "expected_slide_index",
    "generate",
    "jump_penalty",
    "jump_penalty_matrix",
    "linear_penalty",
    "linear_penalty_matrix",
    "no_slide_ratio",
    "optimize_weights",
    "pearson_r",
    "project_to_simplex",
    "score_alignment",
    "score_path",
    "volatility_score",
    "__version__",
]
