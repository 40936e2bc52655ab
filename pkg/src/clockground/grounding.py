"""Clock-series denoising and per-frame timeline grounding.

Two stages: keep the largest subset of raw readings that is mutually
consistent with real clock behaviour (never increasing, never falling
faster than wall time plus a slack), then linearly interpolate between the
retained anchors to ground every frame. Quarter votes consolidate to the
modal label.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from ._chain import max_consistent_chain
from .errors import (
    EmptySeriesError,
    LowAgreementError,
    NoVotesError,
    OutOfRangeError,
)
from .types import (
    MAX_CENTISECONDS,
    ClockTime,
    FpsLike,
    PipelineConfig,
    QuarterLabel,
    VideoMeta,
    fps_fraction,
)
from .validation import check_frame_indices, check_sample_arrays

#: Sentinel for frames without a grounded clock value in int arrays.
NULL_CS = -1

#: Default slack, in centiseconds, for the consistency envelope.
DEFAULT_THETA_CS = 50

#: Default longest anchor gap, in frames, that interpolation will bridge.
DEFAULT_MAX_GAP_FRAMES = 900

#: Quarter agreement at or below this level is flagged as unreliable.
LOW_AGREEMENT_MAX = 0.5

Sample = tuple[int, ClockTime]
Vote = tuple[int, QuarterLabel]


def _sample_cs(value: Union[ClockTime, int]) -> int:
    return value.centiseconds if isinstance(value, ClockTime) else int(value)


@dataclass(frozen=True)
class RawSeries:
    """Per-frame parsed readings for one period-video, before denoising."""

    video: VideoMeta
    samples: tuple[Sample, ...]
    quarter_votes: tuple[Vote, ...] = ()

    def __post_init__(self):
        last = -1
        for frame, value in self.samples:
            if frame <= last:
                raise ValueError("sample frames must be strictly increasing")
            if frame >= self.video.frame_count:
                raise OutOfRangeError(
                    f"sample frame {frame} outside video of {self.video.frame_count} frames"
                )
            if not isinstance(value, ClockTime):
                raise TypeError("sample values must be ClockTime")
            last = frame
        last = -1
        for frame, label in self.quarter_votes:
            if frame <= last:
                raise ValueError("vote frames must be strictly increasing")
            if not isinstance(label, QuarterLabel):
                raise TypeError("votes must be QuarterLabel")
            last = frame

    def frames(self) -> np.ndarray:
        return np.array([f for f, _ in self.samples], dtype=np.int64)

    def values_cs(self) -> np.ndarray:
        return np.array([v.centiseconds for _, v in self.samples], dtype=np.int64)


@dataclass(frozen=True)
class AnchorSet:
    """Readings retained by the denoiser; interpolation endpoints."""

    retained: tuple[Sample, ...]
    rejected_count: int

    def __len__(self) -> int:
        return len(self.retained)

    def frames(self) -> np.ndarray:
        return np.array([f for f, _ in self.retained], dtype=np.int64)

    def values_cs(self) -> np.ndarray:
        return np.array([v.centiseconds for _, v in self.retained], dtype=np.int64)


def envelope_consistent(
    a: tuple[int, Union[ClockTime, int]],
    b: tuple[int, Union[ClockTime, int]],
    fps: FpsLike = 30,
    theta_cs: int = DEFAULT_THETA_CS,
) -> bool:
    """Check the pairwise clock envelope for sample a strictly before b.

    The clock may not increase, and may not fall faster than wall time plus
    theta_cs. Evaluated in exact integer arithmetic so boundary cases are
    reproducible.
    """
    frame_a, val_a = a
    frame_b, val_b = b
    if frame_a >= frame_b:
        raise ValueError("a must come strictly before b")
    frac = fps_fraction(fps)
    p, q = frac.numerator, frac.denominator
    dt = _sample_cs(val_a) - _sample_cs(val_b)
    return 0 <= dt and dt * p <= (frame_b - frame_a) * 100 * q + theta_cs * p


def _select_indices(
    frames: np.ndarray, times: np.ndarray, fps: FpsLike, theta_cs: int
) -> np.ndarray:
    frac = fps_fraction(fps)
    p, q = frac.numerator, frac.denominator
    wvals = times * p + frames * (100 * q)
    return max_consistent_chain(times, wvals, theta_cs * p)


def select_consistent_subset(
    raw: RawSeries, fps: Optional[FpsLike] = None, theta_cs: int = DEFAULT_THETA_CS
) -> AnchorSet:
    """Keep a maximum-cardinality subset of mutually consistent samples.

    Every ordered pair in the result satisfies envelope_consistent. Raises
    EmptySeriesError when the series has no samples.
    """
    if not raw.samples:
        raise EmptySeriesError("raw series has no clock samples")
    if fps is None:
        fps = raw.video.fps
    idx = _select_indices(raw.frames(), raw.values_cs(), fps, theta_cs)
    retained = tuple(raw.samples[i] for i in idx)
    return AnchorSet(retained=retained, rejected_count=len(raw.samples) - len(retained))


def _interp_at(
    anchor_frames: np.ndarray,
    anchor_values: np.ndarray,
    query: np.ndarray,
    max_gap_frames: int,
) -> np.ndarray:
    """Linear interpolation restricted to anchor gaps <= max_gap_frames.

    Returns float64 values with NaN where a query frame is not grounded.
    Anchor frames reproduce their values exactly.
    """
    out = np.full(query.shape, np.nan, dtype=np.float64)
    if anchor_frames.size == 0:
        return out
    seg = np.searchsorted(anchor_frames, query, side="right") - 1
    on_anchor = (seg >= 0) & (anchor_frames[np.clip(seg, 0, None)] == query)
    interior = (seg >= 0) & (seg < anchor_frames.size - 1) & ~on_anchor
    if np.any(interior):
        lo = seg[interior]
        gap = anchor_frames[lo + 1] - anchor_frames[lo]
        ok = gap <= max_gap_frames
        vals = anchor_values[lo] + (anchor_values[lo + 1] - anchor_values[lo]) * (
            (query[interior] - anchor_frames[lo]) / gap
        )
        vals = np.floor(vals + 0.5)
        filled = np.where(ok, vals, np.nan)
        out[interior] = filled
    out[on_anchor] = anchor_values[seg[on_anchor]]
    return out


def interpolate(
    anchors: AnchorSet,
    video: VideoMeta,
    max_gap_frames: int = DEFAULT_MAX_GAP_FRAMES,
) -> np.ndarray:
    """Ground every frame of the video from the anchor set.

    Frames between consecutive anchors no more than max_gap_frames apart
    get the linear interpolant rounded to the nearest centisecond; frames
    in wider gaps, before the first anchor, or after the last stay null
    (NULL_CS). No extrapolation.
    """
    if len(anchors) == 0:
        raise EmptySeriesError("cannot interpolate from an empty anchor set")
    query = np.arange(video.frame_count, dtype=np.int64)
    vals = _interp_at(anchors.frames(), anchors.values_cs(), query, max_gap_frames)
    out = np.where(np.isnan(vals), float(NULL_CS), vals).astype(np.int64)
    return out


def consolidate_quarter(votes: Sequence[Vote]) -> tuple[QuarterLabel, float]:
    """Reduce per-frame quarter votes to the modal label and its agreement.

    Ties break toward the smaller index. Raises NoVotesError on empty
    input; raises LowAgreementError (carrying the mode) when agreement is
    LOW_AGREEMENT_MAX or worse.
    """
    indices = [label.index for _, label in votes]
    if not indices:
        raise NoVotesError("no quarter votes to consolidate")
    counts = Counter(indices)
    index, mode_count = min(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    agreement = mode_count / len(indices)
    label = QuarterLabel(index)
    if agreement <= LOW_AGREEMENT_MAX:
        raise LowAgreementError(label, agreement)
    return label, agreement


@dataclass(frozen=True)
class TimestampSeries:
    """The grounded per-frame timeline of one period-video."""

    video: VideoMeta
    grounded_cs: np.ndarray
    quarter: Optional[QuarterLabel]
    quarter_agreement: float = 0.0

    def __post_init__(self):
        arr = np.asarray(self.grounded_cs, dtype=np.int64)
        if arr.shape != (self.video.frame_count,):
            raise ValueError(
                f"grounded array has shape {arr.shape}, expected ({self.video.frame_count},)"
            )
        values = arr[arr != NULL_CS]
        if values.size:
            if values.min() < 0 or values.max() > MAX_CENTISECONDS:
                raise OutOfRangeError("grounded values outside the clock range")
            if np.any(np.diff(values) > 0):
                raise ValueError("grounded values must be non-increasing")
        object.__setattr__(self, "grounded_cs", arr)

    def grounded(self, frame_idx: int) -> Optional[ClockTime]:
        cs = int(self.grounded_cs[frame_idx])
        return None if cs == NULL_CS else ClockTime(cs)

    @property
    def non_null_count(self) -> int:
        return int(np.count_nonzero(self.grounded_cs != NULL_CS))

    @property
    def low_agreement(self) -> bool:
        return self.quarter_agreement <= LOW_AGREEMENT_MAX

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimestampSeries):
            return NotImplemented
        return (
            self.video == other.video
            and self.quarter == other.quarter
            and self.quarter_agreement == other.quarter_agreement
            and np.array_equal(self.grounded_cs, other.grounded_cs)
        )


@dataclass(frozen=True)
class GroundingResult:
    """Timeline plus the anchor bookkeeping the summary reports."""

    series: TimestampSeries
    anchors: AnchorSet


def ground_series(raw: RawSeries, cfg: Optional[PipelineConfig] = None) -> GroundingResult:
    """Denoise, interpolate, and consolidate one raw series into a timeline.

    Low quarter agreement does not abort grounding; the modal label is kept
    and surfaces through TimestampSeries.low_agreement. An empty vote list
    raises NoVotesError.
    """
    if cfg is None:
        cfg = PipelineConfig(fps=raw.video.fps)
    anchors = select_consistent_subset(raw, fps=raw.video.fps, theta_cs=cfg.theta_cs)
    grounded = interpolate(anchors, raw.video, max_gap_frames=cfg.max_gap_frames)
    try:
        quarter, agreement = consolidate_quarter(raw.quarter_votes)
    except LowAgreementError as err:
        quarter, agreement = err.quarter, err.agreement
    series = TimestampSeries(
        video=raw.video,
        grounded_cs=grounded,
        quarter=quarter,
        quarter_agreement=agreement,
    )
    return GroundingResult(series=series, anchors=anchors)


class ClockGrounder(BaseEstimator):
    """Estimator view of the denoise-and-interpolate stage.

    fit(X, y) takes frame indices and raw centisecond readings, keeps the
    largest mutually consistent subset, and exposes the anchors; predict(X)
    returns interpolated centiseconds (float, NaN where ungrounded) for
    arbitrary frame indices. Composes with scikit-learn tooling through
    get_params/set_params.
    """

    def __init__(
        self,
        fps: FpsLike = 30,
        theta_cs: int = DEFAULT_THETA_CS,
        max_gap_frames: int = DEFAULT_MAX_GAP_FRAMES,
    ):
        self.fps = fps
        self.theta_cs = theta_cs
        self.max_gap_frames = max_gap_frames

    def fit(self, X, y) -> "ClockGrounder":
        frames, times = check_sample_arrays(X, y)
        if frames.size == 0:
            raise EmptySeriesError("cannot fit on an empty series")
        idx = _select_indices(frames, times, self.fps, self.theta_cs)
        self.anchor_frames_ = frames[idx]
        self.anchor_values_ = times[idx]
        self.rejected_count_ = int(frames.size - idx.size)
        self.n_samples_in_ = int(frames.size)
        return self

    def predict(self, X) -> np.ndarray:
        if not hasattr(self, "anchor_frames_"):
            raise NotFittedError("ClockGrounder is not fitted; call fit first")
        query = check_frame_indices(X)
        return _interp_at(
            self.anchor_frames_, self.anchor_values_, query, self.max_gap_frames
        )
