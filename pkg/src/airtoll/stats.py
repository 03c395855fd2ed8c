"""Descriptive statistics for price and intensity series.

Spread measures are reported both raw and normalized by the mean so that
series with different units (dollars per MWh, tons per MWh) can be
compared. Normalization is undefined when the mean is not positive; those
fields come back as None rather than a sentinel number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class SummaryStats:
    """Five-number spread summary of one series."""

    mean: float
    std: float  # population standard deviation
    iqr: float
    normalized_std: float | None
    normalized_iqr: float | None


def quantile(values: Sequence[float], q: float) -> float:
    """Linear-interpolation quantile, q in [0, 1]."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must be in [0, 1], got {q}")
    arr = _as_array(values)
    return float(np.quantile(arr, q))


def summary(values: Sequence[float]) -> SummaryStats:
    """Mean, population std, IQR, and their mean-normalized forms."""
    arr = _as_array(values)
    mean = float(arr.mean())
    std = float(arr.std(ddof=0))
    q1, q3 = np.quantile(arr, [0.25, 0.75])
    iqr = float(q3 - q1)
    if mean > 0.0:
        normalized_std: float | None = std / mean
        normalized_iqr: float | None = iqr / mean
    else:
        normalized_std = None
        normalized_iqr = None
    return SummaryStats(mean=mean, std=std, iqr=iqr, normalized_std=normalized_std, normalized_iqr=normalized_iqr)


def pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Pearson correlation; None when either series has zero variance."""
    ax = _as_array(x)
    ay = _as_array(y)
    if ax.shape != ay.shape:
        raise ValueError(f"length mismatch: {ax.size} vs {ay.size}")
    if ax.size < 2:
        raise ValueError("need at least two points")
    dx = ax - ax.mean()
    dy = ay - ay.mean()
    sx = float(np.sqrt(np.dot(dx, dx)))
    sy = float(np.sqrt(np.dot(dy, dy)))
    if sx == 0.0 or sy == 0.0:
        return None
    return float(np.dot(dx, dy) / (sx * sy))


def cdf(values: Sequence[float]) -> list[tuple[float, float]]:
    """Empirical CDF as (sorted value, k/n) pairs."""
    arr = _as_array(values)
    ordered = np.sort(arr)
    n = ordered.size
    return [(float(v), (k + 1) / n) for k, v in enumerate(ordered)]


def _as_array(values: Sequence[float]) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError("series contains non-finite values")
    return arr
