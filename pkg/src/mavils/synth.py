"""Synthetic lectures with planted ground truth.

Generates a slide-label sequence with a requested volatility (slide-label
changes per slide) and per-modality similarity matrices carrying the
planted signal, so decoder and metric claims can be tested against a known
answer. The noise model is deliberately minimal: Gaussian entry noise for
general degradation plus "distractor" spikes on wrong slides, emulating
decks where several slides differ only slightly.

Construction details that tests rely on:
  - the slide path moves in steps of one (forward-biased random walk), so
    with signal 1.0 and no noise the decoder recovers it exactly for any
    jump weight up to 0.25;
  - no-slide (-1) frames form one block at the end of the lecture and
    carry zero signal in every modality;
  - everything is drawn from one seeded generator, so a spec with the same
    seed always produces identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evaluate import NO_SLIDE, GroundTruth, Segment
from .matrix import SimilarityMatrix

SEGMENT_SECONDS = 5.0
DISTRACTOR_LEVEL = 0.9
FORWARD_BIAS = 0.8


@dataclass(frozen=True)
class SynthSpec:
    """Parameters of one synthetic lecture."""

    n_frames: int
    m_slides: int
    signal: float = 1.0
    noise_sigma: float = 0.0
    volatility: float = 1.0
    no_slide_fraction: float = 0.0
    distractor_prob: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n_frames < 1:
            raise ValueError(f"n_frames must be >= 1, got {self.n_frames}")
        if self.m_slides < 1:
            raise ValueError(f"m_slides must be >= 1, got {self.m_slides}")
        if not (0.0 < self.signal <= 1.0):
            raise ValueError(f"signal must lie in (0, 1], got {self.signal}")
        if self.noise_sigma < 0.0:
            raise ValueError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.volatility < 0.0:
            raise ValueError(f"volatility must be >= 0, got {self.volatility}")
        if not (0.0 <= self.no_slide_fraction < 1.0):
            raise ValueError(f"no_slide_fraction must lie in [0, 1), got {self.no_slide_fraction}")
        if not (0.0 <= self.distractor_prob <= 1.0):
            raise ValueError(f"distractor_prob must lie in [0, 1], got {self.distractor_prob}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")


def _plant_labels(spec: SynthSpec, rng: np.random.Generator) -> np.ndarray:
    """Build the label sequence hitting the requested change count.

    Returns (n_frames,) int labels, -1 for no-slide frames. The achieved
    number of adjacent-label changes is within one of
    round(volatility * m_slides).
    """
    n, m = spec.n_frames, spec.m_slides
    target = int(round(spec.volatility * m))
    if target > n - 1:
        raise ValueError(
            f"infeasible volatility {spec.volatility}: needs {target} changes "
            f"but {n} frames allow at most {n - 1}"
        )
    n_no_slide = int(spec.no_slide_fraction * n)
    n_labeled = n - n_no_slide

    # The trailing -1 block contributes one change; the labeled prefix
    # supplies the rest.
    budget = target - 1 if n_no_slide > 0 else target
    budget = max(budget, 0)
    if budget > n_labeled - 1:
        raise ValueError(
            f"infeasible volatility {spec.volatility}: needs {budget} slide changes "
            f"but only {n_labeled} frames carry a slide "
            f"(no_slide_fraction={spec.no_slide_fraction})"
        )
    if m == 1 and budget > 0:
        raise ValueError("cannot change slides in a single-slide deck")

    runs = budget + 1
    lengths = np.ones(runs, dtype=np.int64)
    extra = n_labeled - runs
    if extra > 0:
        lengths += rng.multinomial(extra, np.full(runs, 1.0 / runs))

    # Forward-biased unit-step walk: adjacent runs differ by exactly one
    # slide, so no-noise decoding stays exact for jump weights <= 0.25.
    labels = [1]
    for _ in range(runs - 1):
        cur = labels[-1]
        if cur == 1:
            labels.append(2)
        elif cur == m:
            labels.append(m - 1)
        elif rng.random() < FORWARD_BIAS:
            labels.append(cur + 1)
        else:
            labels.append(cur - 1)

    seq = np.repeat(np.array(labels, dtype=np.int64), lengths)
    if n_no_slide > 0:
        seq = np.concatenate([seq, np.full(n_no_slide, NO_SLIDE, dtype=np.int64)])
    return seq


def _modality_matrix(
    spec: SynthSpec, labels: np.ndarray, tag: str, rng: np.random.Generator
) -> SimilarityMatrix:
    n, m = spec.n_frames, spec.m_slides
    values = np.zeros((n, m), dtype=np.float64)
    labeled = labels != NO_SLIDE
    rows = np.nonzero(labeled)[0]
    values[rows, labels[rows] - 1] = spec.signal
    if spec.distractor_prob > 0.0:
        distractors = rng.random((n, m)) < spec.distractor_prob
        distractors[~labeled] = False
        distractors[rows, labels[rows] - 1] = False
        values[distractors] = DISTRACTOR_LEVEL * spec.signal
    if spec.noise_sigma > 0.0:
        values += rng.normal(0.0, spec.noise_sigma, size=(n, m))
    np.clip(values, -1.0, 1.0, out=values)
    return SimilarityMatrix(values, modality_tag=tag)


def generate(spec: SynthSpec) -> tuple[GroundTruth, SimilarityMatrix, SimilarityMatrix, SimilarityMatrix]:
    """Generate one synthetic lecture.

    Returns:
        (truth, text, audio, image): ground truth with planted labels and
        one similarity matrix per modality, each independently noised.

    Raises:
        ValueError: if the requested volatility cannot be realized with
            n_frames (more changes than adjacent pairs).
    """
    rng = np.random.default_rng(spec.seed)
    labels = _plant_labels(spec, rng)
    segments = tuple(
        Segment(
            start_time=i * SEGMENT_SECONDS,
            end_time=(i + 1) * SEGMENT_SECONDS,
            sentence=f"synthetic segment {i}",
            slide_label=int(label),
        )
        for i, label in enumerate(labels)
    )
    truth = GroundTruth(segments=segments, total_slides=spec.m_slides)
    mats = [_modality_matrix(spec, labels, tag, rng) for tag in ("text", "audio", "image")]
    return truth, mats[0], mats[1], mats[2]
