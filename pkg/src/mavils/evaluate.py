"""Ground-truth handling, alignment scoring, and dataset statistics.

Scoring is per-frame: a prediction is correct when it matches the labeled
slide, and frames labeled -1 (no slide visible or identifiable) are
excluded from scoring rather than required to be predicted. Accuracy over
the scored frames is the headline metric; macro precision/recall/F1 per
slide class are reported for diagnostics.

Two dataset statistics characterize lecture style: the volatility score
(slide-label changes divided by total slides; values of 1.5 and above
flag heavy back-and-forth navigation) and the no-slide/slide ratio
(-1-labeled segments per slide-labeled segment).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .align import Alignment

NO_SLIDE = -1


@dataclass(frozen=True)
class Segment:
    """One transcript sentence's time span with its manual slide label."""

    start_time: float
    end_time: float
    sentence: str
    slide_label: int


@dataclass(frozen=True)
class GroundTruth:
    """Ordered labeled segments of one lecture plus the deck size."""

    segments: tuple[Segment, ...]
    total_slides: int

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if len(self.segments) < 1:
            raise ValueError("ground truth must contain at least one segment")
        if self.total_slides < 1:
            raise ValueError(f"total_slides must be >= 1, got {self.total_slides}")
        prev_start = 0.0
        for idx, seg in enumerate(self.segments):
            if seg.start_time < 0.0 or seg.end_time < 0.0:
                raise ValueError(f"negative time in segment {idx}")
            if seg.end_time < seg.start_time:
                raise ValueError(
                    f"segment {idx} ends at {seg.end_time} before it starts at {seg.start_time}"
                )
            if seg.start_time < prev_start:
                raise ValueError(
                    f"non-monotone times: segment {idx} starts at {seg.start_time}, "
                    f"before segment {idx - 1} at {prev_start}"
                )
            prev_start = seg.start_time
            if seg.slide_label != NO_SLIDE and not (1 <= seg.slide_label <= self.total_slides):
                raise ValueError(
                    f"slide label {seg.slide_label} in segment {idx} out of range "
                    f"[1, {self.total_slides}] (or -1)"
                )

    @property
    def n_segments(self) -> int:
        return len(self.segments)

    def labels(self) -> np.ndarray:
        return np.array([s.slide_label for s in self.segments], dtype=np.int64)


@dataclass(frozen=True)
class EvalReport:
    """Metric bundle for one scored alignment."""

    accuracy: float
    precision_macro: float
    recall_macro: float
    f1_macro: float
    n_scored: int
    n_ignored: int
    volatility: float
    no_slide_ratio: float

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision_macro": self.precision_macro,
            "recall_macro": self.recall_macro,
            "f1_macro": self.f1_macro,
            "n_scored": self.n_scored,
            "n_ignored": self.n_ignored,
            "volatility": self.volatility,
            "no_slide_ratio": self.no_slide_ratio,
            "metadata": {
                # label changes into/out of -1 count as slide-number changes
                "volatility_counts_no_slide_transitions": True,
            },
        }


def volatility_score(truth: GroundTruth) -> float:
    """Slide-label changes between adjacent segments, per slide in the deck.

    Transitions into and out of the -1 label count as changes: the label
    sequence changes either way.
    """
    labels = truth.labels()
    changes = int(np.count_nonzero(labels[1:] != labels[:-1]))
    return changes / truth.total_slides


def no_slide_ratio(truth: GroundTruth) -> float:
    """Count of -1-labeled segments per slide-labeled segment."""
    labels = truth.labels()
    n_no_slide = int(np.count_nonzero(labels == NO_SLIDE))
    n_slide = labels.size - n_no_slide
    if n_slide == 0:
        raise ValueError("no-slide ratio undefined: every segment is labeled -1")
    return n_no_slide / n_slide


def score_alignment(pred: Alignment, truth: GroundTruth) -> EvalReport:
    """Score a decoded alignment against labeled segments.

    Segment i corresponds to frame i. Frames whose label is -1 are ignored.
    Accuracy is the fraction of scored frames predicted exactly right;
    precision/recall/F1 are computed per slide class present in the truth,
    over scored frames, then macro-averaged.

    Raises:
        ValueError: if the path length differs from the segment count, or
            every segment is labeled -1.
    """
    labels = truth.labels()
    if pred.path.size != labels.size:
        raise ValueError(
            f"length mismatch: alignment has {pred.path.size} frames, "
            f"ground truth has {labels.size} segments"
        )
    volatility = volatility_score(truth)
    ratio = no_slide_ratio(truth)  # raises on all-(-1) truth

    scored = labels != NO_SLIDE
    n_scored = int(np.count_nonzero(scored))
    n_ignored = labels.size - n_scored
    y_true = labels[scored]
    y_pred = pred.path[scored]

    accuracy = float(np.count_nonzero(y_true == y_pred)) / n_scored

    precisions = []
    recalls = []
    f1s = []
    for cls in np.unique(y_true):
        tp = int(np.count_nonzero((y_pred == cls) & (y_true == cls)))
        fp = int(np.count_nonzero((y_pred == cls) & (y_true != cls)))
        fn = int(np.count_nonzero((y_pred != cls) & (y_true == cls)))
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        f1 = 2.0 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        precisions.append(precision)
        recalls.append(recall)
        f1s.append(f1)

    return EvalReport(
        accuracy=accuracy,
        precision_macro=float(np.mean(precisions)),
        recall_macro=float(np.mean(recalls)),
        f1_macro=float(np.mean(f1s)),
        n_scored=n_scored,
        n_ignored=n_ignored,
        volatility=volatility,
        no_slide_ratio=ratio,
    )


def pearson_r(x, y) -> float:
    """Sample Pearson correlation coefficient of two equal-length sequences."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
        raise ValueError(f"inputs must be equal-length 1-D sequences, got {x.shape} and {y.shape}")
    if x.size < 2:
        raise ValueError("need at least 2 points for a correlation")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("correlation undefined: zero variance input")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return min(max(r, -1.0), 1.0)
