"""Core domain types: clock values, regions, video metadata, pipeline configuration.

Everything here is an immutable value object, so instances can be shared
freely across worker processes without coordination.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Union

from .errors import OutOfRangeError

#: Upper clock bound, 60:00.00. Generous enough for NBA quarters (12 min)
#: and NCAA halves (20 min) alike.
MAX_CENTISECONDS = 360_000

Bbox = tuple[float, float, float, float]
FpsLike = Union[int, float, Fraction]


def fps_fraction(fps: FpsLike) -> Fraction:
    """Normalize a frame rate to an exact rational.

    Floats are snapped to the nearest small-denominator rational so that
    broadcast rates written as 29.97 or 59.94 behave exactly.
    """
    if isinstance(fps, Fraction):
        frac = fps
    elif isinstance(fps, int):
        frac = Fraction(fps)
    elif isinstance(fps, float):
        frac = Fraction(fps).limit_denominator(1_000_000)
    else:
        raise TypeError(f"fps must be numeric, got {type(fps).__name__}")
    if frac <= 0:
        raise OutOfRangeError(f"fps must be positive, got {fps}")
    return frac


class RegionKind(str, Enum):
    """The two scoreboard text regions this pipeline extracts."""

    TIME_REMAINING = "time_remaining"
    QUARTER = "quarter"


@dataclass(frozen=True, order=True)
class ClockTime:
    """Time remaining in a period, stored as integer centiseconds.

    Centiseconds represent broadcast tenths exactly, so equality and
    format/parse round-trips are exact integer comparisons.
    """

    centiseconds: int

    def __post_init__(self):
        cs = self.centiseconds
        if not isinstance(cs, int) or isinstance(cs, bool):
            raise OutOfRangeError(f"centiseconds must be an int, got {cs!r}")
        if not 0 <= cs <= MAX_CENTISECONDS:
            raise OutOfRangeError(
                f"centiseconds {cs} outside [0, {MAX_CENTISECONDS}]"
            )

    @classmethod
    def from_components(cls, minutes: int, seconds: int, centis: int) -> "ClockTime":
        return clock_time_from_components(minutes, seconds, centis)

    def components(self) -> tuple[int, int, int]:
        minutes, rem = divmod(self.centiseconds, 6000)
        seconds, centis = divmod(rem, 100)
        return minutes, seconds, centis

    def __str__(self) -> str:
        return format_clock_time(self)


def clock_time_from_components(minutes: int, seconds: int, centis: int) -> ClockTime:
    """Build a ClockTime from minute/second/centisecond components.

    Raises OutOfRangeError when any component is out of range or the total
    exceeds the 60:00 bound.
    """
    if minutes < 0:
        raise OutOfRangeError(f"minutes must be non-negative, got {minutes}")
    if not 0 <= seconds < 60:
        raise OutOfRangeError(f"seconds must be in [0, 60), got {seconds}")
    if not 0 <= centis < 100:
        raise OutOfRangeError(f"centis must be in [0, 100), got {centis}")
    total = minutes * 6000 + seconds * 100 + centis
    if total > MAX_CENTISECONDS:
        raise OutOfRangeError(f"{minutes}:{seconds:02d}.{centis:02d} exceeds 60:00")
    return ClockTime(total)


def format_clock_time(ct: Union[ClockTime, int]) -> str:
    """Render a clock value the way a scorebug displays it.

    "M:SS" on whole seconds at or above one minute, "SS.t" below one
    minute, "M:SS.t" otherwise. Output always re-parses via
    parse_time_remaining; values at tenth resolution round-trip exactly.
    """
    cs = ct.centiseconds if isinstance(ct, ClockTime) else int(ct)
    if not 0 <= cs <= MAX_CENTISECONDS:
        raise OutOfRangeError(f"centiseconds {cs} outside [0, {MAX_CENTISECONDS}]")
    minutes, rem = divmod(cs, 6000)
    seconds, centis = divmod(rem, 100)
    tenths = centis // 10
    if cs < 6000:
        return f"{seconds}.{tenths}"
    if centis == 0:
        return f"{minutes}:{seconds:02d}"
    return f"{minutes}:{seconds:02d}.{tenths}"


@dataclass(frozen=True, order=True)
class QuarterLabel:
    """Game period index: 1-4 regulation, 5 and up for successive overtimes."""

    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or isinstance(self.index, bool):
            raise OutOfRangeError(f"quarter index must be an int, got {self.index!r}")
        if self.index < 1:
            raise OutOfRangeError(f"quarter index must be >= 1, got {self.index}")

    def display(self) -> str:
        names = {1: "1st", 2: "2nd", 3: "3rd", 4: "4th", 5: "OT"}
        if self.index in names:
            return names[self.index]
        return f"{self.index - 4}OT"

    def __str__(self) -> str:
        return self.display()


@dataclass(frozen=True)
class VideoMeta:
    """Frame count and frame rate of one period-video."""

    frame_count: int
    fps: FpsLike = 30

    def __post_init__(self):
        if self.frame_count < 0:
            raise OutOfRangeError(f"frame_count must be >= 0, got {self.frame_count}")
        fps_fraction(self.fps)  # validates positivity

    @property
    def fps_exact(self) -> Fraction:
        return fps_fraction(self.fps)


@dataclass(frozen=True)
class Detection:
    """One localized text region proposal on a frame."""

    region: RegionKind
    bbox: Bbox
    object_prob: float
    iou_est: float

    def __post_init__(self):
        x, y, w, h = self.bbox
        if w <= 0 or h <= 0:
            raise OutOfRangeError(f"bbox must have positive size, got {self.bbox}")
        if not 0.0 <= self.object_prob <= 1.0:
            raise OutOfRangeError(f"object_prob {self.object_prob} outside [0, 1]")
        if not 0.0 <= self.iou_est <= 1.0:
            raise OutOfRangeError(f"iou_est {self.iou_est} outside [0, 1]")


@dataclass(frozen=True)
class OcrReading:
    """Recognized text for one region of one frame."""

    region: RegionKind
    raw_text: str
    text_conf: float

    def __post_init__(self):
        if not self.raw_text:
            raise OutOfRangeError("raw_text must be non-empty")
        if not 0.0 <= self.text_conf <= 1.0:
            raise OutOfRangeError(f"text_conf {self.text_conf} outside [0, 1]")


@dataclass(frozen=True)
class FrameSample:
    """Per-frame OCR readings, at most one per region kind."""

    frame_idx: int
    readings: tuple[OcrReading, ...] = ()

    def __post_init__(self):
        if self.frame_idx < 0:
            raise OutOfRangeError(f"frame_idx must be >= 0, got {self.frame_idx}")
        kinds = [r.region for r in self.readings]
        if len(kinds) != len(set(kinds)):
            raise OutOfRangeError("at most one reading per region kind")


@dataclass(frozen=True)
class PipelineConfig:
    """Tunable knobs for extraction, denoising, and parallel execution."""

    step_interval: int = 1
    conf_threshold: float = 0.5
    theta_cs: int = 50
    max_gap_frames: int = 900
    workers: int = 1
    fps: FpsLike = 30

    def __post_init__(self):
        if self.step_interval < 1:
            raise OutOfRangeError(f"step_interval must be >= 1, got {self.step_interval}")
        if not 0.0 <= self.conf_threshold <= 1.0:
            raise OutOfRangeError(
                f"conf_threshold {self.conf_threshold} outside [0, 1]"
            )
        if self.theta_cs < 0:
            raise OutOfRangeError(f"theta_cs must be >= 0, got {self.theta_cs}")
        if self.max_gap_frames < 1:
            raise OutOfRangeError(
                f"max_gap_frames must be >= 1, got {self.max_gap_frames}"
            )
        if self.workers < 1:
            raise OutOfRangeError(f"workers must be >= 1, got {self.workers}")
        fps_fraction(self.fps)

    @property
    def fps_exact(self) -> Fraction:
        return fps_fraction(self.fps)
