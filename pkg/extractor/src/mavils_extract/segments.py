"""Transcript segments: one per spoken sentence, with its time span."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class Segment:
    start_time: float
    end_time: float
    sentence: str

    @property
    def midpoint(self) -> float:
        return (self.start_time + self.end_time) / 2.0


@dataclass(frozen=True)
class SegmentIndex:
    """Ordered transcript segments plus where they came from."""

    segments: tuple[Segment, ...]
    source: str

    def __post_init__(self):
        if not self.segments:
            raise ValueError(f"{self.source}: transcript contains no segments")
        prev = 0.0
        for idx, seg in enumerate(self.segments):
            if seg.start_time < 0 or seg.end_time < seg.start_time:
                raise ValueError(f"{self.source}: bad time span in segment {idx}")
            if seg.start_time < prev:
                raise ValueError(f"{self.source}: non-monotone times at segment {idx}")
            prev = seg.start_time

    def __len__(self) -> int:
        return len(self.segments)

    def sentences(self) -> list[str]:
        return [seg.sentence for seg in self.segments]


def load_transcript(path) -> SegmentIndex:
    """Read a transcript CSV with header `start,end,sentence`.

    Ground-truth-style files with a trailing `slide` column are accepted;
    the extra column is ignored.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ValueError(f"{path}: empty transcript") from None
        if header[:3] != ["start", "end", "sentence"]:
            raise ValueError(f"{path}: bad header {header!r}, expected start,end,sentence[,slide]")
        segments = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) < 3:
                raise ValueError(f"{path}: line {lineno}: expected at least 3 fields")
            try:
                segments.append(Segment(float(row[0]), float(row[1]), row[2]))
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from None
    return SegmentIndex(segments=tuple(segments), source=str(path))
