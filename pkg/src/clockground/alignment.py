"""Bind play-by-play events to frame indices via the grounded timeline."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .errors import OutOfRangeError
from .grounding import NULL_CS, TimestampSeries
from .types import ClockTime, QuarterLabel

#: Default matching tolerance: play-by-play clocks are whole seconds.
DEFAULT_TOL_CS = 100

#: Default clip window, seconds either side of the anchor frame.
DEFAULT_PRE_S = 4.0
DEFAULT_POST_S = 4.0

WRONG_PERIOD = "wrong_period"
NO_COVERAGE = "no_coverage"
NO_QUARTER = "no_quarter"


@dataclass(frozen=True)
class PlayByPlayEvent:
    """One logged game event, stamped with period and game-clock time."""

    event_id: str
    period: QuarterLabel
    clock: ClockTime
    label: str = ""


@dataclass(frozen=True)
class AlignedEvent:
    """An event bound to a frame plus its surrounding clip span."""

    event_id: str
    anchor_frame: int
    clip_start_frame: int
    clip_end_frame: int
    residual_cs: int

    def __post_init__(self):
        if not self.clip_start_frame <= self.anchor_frame <= self.clip_end_frame:
            raise OutOfRangeError("anchor frame must lie inside its clip span")


@dataclass(frozen=True)
class AlignmentReport:
    """Partition of the input events into aligned and unaligned."""

    aligned: tuple[AlignedEvent, ...]
    unaligned: tuple[tuple[str, str], ...]
    coverage: float


def ground_event(
    event: PlayByPlayEvent,
    series: TimestampSeries,
    tol_cs: int = DEFAULT_TOL_CS,
) -> tuple[Optional[int], Optional[str]]:
    """Find the frame whose grounded clock best matches the event clock.

    Returns (anchor_frame, None) on success, picking the frame minimizing
    |grounded - clock| and the earliest frame on ties (the moment the
    displayed clock first reaches the value, which settles stopped-clock
    plateaus). Returns (None, reason) when the event belongs to another
    period or no grounded frame is within tol_cs.
    """
    if series.quarter is None:
        return None, NO_QUARTER
    if event.period != series.quarter:
        return None, WRONG_PERIOD
    grounded = series.grounded_cs
    mask = grounded != NULL_CS
    if not np.any(mask):
        return None, NO_COVERAGE
    diffs = np.abs(grounded - event.clock.centiseconds).astype(np.int64)
    diffs[~mask] = np.iinfo(np.int64).max
    anchor = int(np.argmin(diffs))
    if diffs[anchor] > tol_cs:
        return None, NO_COVERAGE
    return anchor, None


def align_corpus(
    events: Sequence[PlayByPlayEvent],
    series: TimestampSeries,
    pre_s: float = DEFAULT_PRE_S,
    post_s: float = DEFAULT_POST_S,
    tol_cs: int = DEFAULT_TOL_CS,
) -> AlignmentReport:
    """Ground every event independently and clip a window around each anchor.

    Clip bounds are clamped to the video; events are independent, so the
    report does not depend on input order beyond listing.
    """
    if pre_s < 0 or post_s < 0:
        raise OutOfRangeError("clip window seconds must be non-negative")
    fps = float(series.video.fps_exact)
    pre_frames = int(round(pre_s * fps))
    post_frames = int(round(post_s * fps))
    last_frame = series.video.frame_count - 1
    aligned: list[AlignedEvent] = []
    unaligned: list[tuple[str, str]] = []
    for event in events:
        anchor, reason = ground_event(event, series, tol_cs=tol_cs)
        if anchor is None:
            unaligned.append((event.event_id, reason))
            continue
        residual = abs(int(series.grounded_cs[anchor]) - event.clock.centiseconds)
        aligned.append(
            AlignedEvent(
                event_id=event.event_id,
                anchor_frame=anchor,
                clip_start_frame=max(0, anchor - pre_frames),
                clip_end_frame=min(last_frame, anchor + post_frames),
                residual_cs=residual,
            )
        )
    total = len(events)
    coverage = len(aligned) / total if total else 1.0
    return AlignmentReport(
        aligned=tuple(aligned), unaligned=tuple(unaligned), coverage=coverage
    )


class EventAligner(BaseEstimator):
    """Estimator view of event alignment.

    fit() takes the grounded timeline as the reference; align() produces
    the full report, while predict() returns just the anchor frames (float
    array, NaN for unaligned events) for ecosystem interoperability.
    """

    def __init__(
        self,
        tol_cs: int = DEFAULT_TOL_CS,
        pre_s: float = DEFAULT_PRE_S,
        post_s: float = DEFAULT_POST_S,
    ):
        self.tol_cs = tol_cs
        self.pre_s = pre_s
        self.post_s = post_s

    def fit(self, series: TimestampSeries, y=None) -> "EventAligner":
        if not isinstance(series, TimestampSeries):
            raise TypeError("EventAligner.fit expects a TimestampSeries")
        self.series_ = series
        return self

    def _check_fitted(self):
        if not hasattr(self, "series_"):
            raise NotFittedError("EventAligner is not fitted; call fit first")

    def align(self, events: Sequence[PlayByPlayEvent]) -> AlignmentReport:
        self._check_fitted()
        return align_corpus(
            events,
            self.series_,
            pre_s=self.pre_s,
            post_s=self.post_s,
            tol_cs=self.tol_cs,
        )

    def predict(self, events: Sequence[PlayByPlayEvent]) -> np.ndarray:
        self._check_fitted()
        out = np.full(len(events), np.nan, dtype=np.float64)
        for i, event in enumerate(events):
            anchor, _ = ground_event(events[i], self.series_, tol_cs=self.tol_cs)
            if anchor is not None:
                out[i] = anchor
        return out
