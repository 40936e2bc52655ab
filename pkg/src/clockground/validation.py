"""Input validation helpers for the estimator-style API.

These normalize array-likes into the canonical numpy forms the kernels
expect, mirroring how scikit-learn's check_array keeps estimators honest.
"""
from __future__ import annotations

import numpy as np

from .errors import OutOfRangeError
from .types import MAX_CENTISECONDS


def check_frame_indices(X, require_sorted: bool = False) -> np.ndarray:
    """Coerce to a 1-D int64 array of non-negative frame indices.

    Accepts 1-D array-likes or single-column 2-D arrays (the sklearn
    convention for univariate features).
    """
    arr = np.asarray(X)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"frame indices must be 1-D, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        rounded = np.rint(np.asarray(arr, dtype=np.float64))
        if not np.allclose(arr, rounded, rtol=0, atol=1e-9):
            raise ValueError("frame indices must be integers")
        arr = rounded
    arr = arr.astype(np.int64, copy=False)
    if arr.size and arr.min() < 0:
        raise OutOfRangeError("frame indices must be non-negative")
    if require_sorted and arr.size > 1 and not np.all(np.diff(arr) > 0):
        raise ValueError("frame indices must be strictly increasing")
    return arr


def check_centiseconds(y) -> np.ndarray:
    """Coerce to a 1-D int64 array of in-range centisecond values."""
    arr = np.asarray(y)
    if arr.ndim != 1:
        raise ValueError(f"centisecond values must be 1-D, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        rounded = np.rint(np.asarray(arr, dtype=np.float64))
        if not np.allclose(arr, rounded, rtol=0, atol=1e-9):
            raise ValueError("centisecond values must be integers")
        arr = rounded
    arr = arr.astype(np.int64, copy=False)
    if arr.size and (arr.min() < 0 or arr.max() > MAX_CENTISECONDS):
        raise OutOfRangeError(
            f"centisecond values must lie in [0, {MAX_CENTISECONDS}]"
        )
    return arr


def check_sample_arrays(X, y) -> tuple[np.ndarray, np.ndarray]:
    """Validate paired (frame_idx, centiseconds) sample arrays."""
    frames = check_frame_indices(X, require_sorted=True)
    times = check_centiseconds(y)
    if frames.shape[0] != times.shape[0]:
        raise ValueError(
            f"frame and value arrays disagree: {frames.shape[0]} vs {times.shape[0]}"
        )
    return frames, times
