"""Exception types shared across the package."""
from __future__ import annotations


class ClockGroundError(Exception):
    """Base class for all clockground errors."""


class OutOfRangeError(ClockGroundError, ValueError):
    """A value falls outside its documented range."""


class UnparseableError(ClockGroundError, ValueError):
    """A raw string does not match the clock or quarter grammar."""


class NoDetectionsError(ClockGroundError):
    """No frame passed confidence gating."""


class UnstableRoiError(ClockGroundError):
    """Accepted detections do not agree on a static region position."""

    def __init__(self, message: str, roi=None):
        super().__init__(message)
        self.roi = roi


class EmptySeriesError(ClockGroundError):
    """A raw series contains no clock samples."""


class NoVotesError(ClockGroundError):
    """No quarter votes are available for consolidation."""


class LowAgreementError(ClockGroundError):
    """Quarter votes disagree badly; carries the modal label anyway."""

    def __init__(self, quarter, agreement: float):
        super().__init__(
            f"quarter votes agree at only {agreement:.2f}; modal label is {quarter}"
        )
        self.quarter = quarter
        self.agreement = agreement


class MissingChunkError(ClockGroundError):
    """A work chunk never reported a partial result."""


class BackendUnavailableError(ClockGroundError):
    """A backend source cannot be opened."""


class WireFormatError(ClockGroundError, ValueError):
    """A JSONL record violates the wire-format contract."""
