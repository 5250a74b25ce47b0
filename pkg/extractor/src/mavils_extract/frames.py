"""Sample one video frame per transcript segment."""

from __future__ import annotations

from pathlib import Path

import cv2
import numpy as np

from .segments import SegmentIndex

FRAME_POLICIES = ("midpoint", "start")


def extract_frames(video_path, segments: SegmentIndex, policy: str = "midpoint") -> list[np.ndarray]:
    """One RGB frame per segment, sampled at its midpoint or start.

    Midpoint sampling (the default) avoids capturing slide transitions at
    sentence boundaries.

    Raises:
        ValueError: on an unreadable video, or when segment timestamps lie
            beyond the video duration (all offenders listed).
    """
    if policy not in FRAME_POLICIES:
        raise ValueError(f"policy must be one of {FRAME_POLICIES}, got {policy!r}")
    video_path = Path(video_path)
    if not video_path.exists():
        raise ValueError(f"{video_path}: no such video file")
    cap = cv2.VideoCapture(str(video_path))
    if not cap.isOpened():
        raise ValueError(f"{video_path}: cannot open video")
    try:
        fps = cap.get(cv2.CAP_PROP_FPS)
        frame_count = cap.get(cv2.CAP_PROP_FRAME_COUNT)
        duration = frame_count / fps if fps > 0 else 0.0

        timestamps = [
            seg.midpoint if policy == "midpoint" else seg.start_time for seg in segments.segments
        ]
        beyond = [i for i, t in enumerate(timestamps) if t > duration]
        if beyond:
            raise ValueError(
                f"{video_path}: segments {beyond} have timestamps beyond the video "
                f"duration of {duration:.2f}s"
            )

        frames = []
        for i, t in enumerate(timestamps):
            # seek by frame index: deterministic across runs, unlike ms seek
            # on some codecs
            target = min(int(t * fps), int(frame_count) - 1) if fps > 0 else 0
            cap.set(cv2.CAP_PROP_POS_FRAMES, max(target, 0))
            ok, frame = cap.read()
            if not ok:
                raise ValueError(f"{video_path}: failed to decode a frame for segment {i} at {t:.2f}s")
            frames.append(cv2.cvtColor(frame, cv2.COLOR_BGR2RGB))
        return frames
    finally:
        cap.release()
