"""Risk/return criteria from overlapping moving windows.

For each window of consecutive records we measure the simple return, the
summed traded volume and a least-squares fit of close price against volume.
The six criteria of an asset are the mean and deviation of the window
returns and volumes, and the mean slope and mean R^2 of the fits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegeneratePriceError, InsufficientDataError
from .ingest import OhlcvRecord, OhlcvSeries

__all__ = [
    "ORIENTATIONS",
    "WindowSpec",
    "TrendFit",
    "WindowStats",
    "CriteriaRow",
    "enumerate_windows",
    "window_return",
    "window_volume",
    "ols_fit",
    "window_trend",
    "window_stats",
    "criteria_row",
]

#: close-on-volume: volume is the regressor, close the response
ORIENTATIONS = ("close-on-volume", "volume-on-close")


@dataclass(frozen=True)
class WindowSpec:
    length: int
    stride: int = 1

    def __post_init__(self) -> None:
        if self.length < 2:
            raise ValueError(f"window length must be >= 2, got {self.length}")
        if self.stride < 1:
            raise ValueError(f"window stride must be >= 1, got {self.stride}")


class TrendFit(NamedTuple):
    slope: float
    r_squared: float
    degenerate: bool = False


@dataclass(frozen=True)
class WindowStats:
    window_return: float
    window_volume: float
    slope: float
    r_squared: float
    degenerate: bool = False


@dataclass(frozen=True)
class CriteriaRow:
    """The six criteria for one asset at one window length."""

    symbol: str
    mean_return: float
    std_return: float
    mean_volume: float
    std_volume: float
    mean_slope: float
    mean_r2: float
    n_windows: int = 0
    degenerate_fits: int = 0

    def __post_init__(self) -> None:
        if self.std_return < 0 or self.std_volume < 0:
            raise ValueError("standard deviations must be nonnegative")
        if not 0.0 <= self.mean_r2 <= 1.0:
            raise ValueError(f"mean_r2 out of [0, 1]: {self.mean_r2}")


def enumerate_windows(
    series: OhlcvSeries | Sequence[OhlcvRecord], spec: WindowSpec
) -> list[tuple[OhlcvRecord, ...]]:
    """Slices of ``spec.length`` consecutive records, oldest first."""
    records = tuple(series.records if isinstance(series, OhlcvSeries) else series)
    n = len(records)
    if n < spec.length:
        raise InsufficientDataError("series shorter than window", n, spec.length)
    return [records[s : s + spec.length] for s in range(0, n - spec.length + 1, spec.stride)]


def window_return(window: Sequence[OhlcvRecord]) -> float:
    """Relative change in close from the first to the last record."""
    if not window:
        raise ValueError("empty window")
    first, last = window[0].close, window[-1].close
    if not first > 0:
        raise DegeneratePriceError(f"first close {first!r} is not positive")
    return (last - first) / first


def window_volume(window: Sequence[OhlcvRecord]) -> float:
    if not window:
        raise ValueError("empty window")
    return math.fsum(r.volume for r in window)


def ols_fit(x: Sequence[float], y: Sequence[float]) -> TrendFit:
    """Simple least-squares line ``y = a + b x``.

    A constant regressor or constant response gives ``TrendFit(0, 0, True)``
    rather than an error.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if x.size < 2:
        raise ValueError("a line fit needs at least 2 points")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return TrendFit(0.0, 0.0, True)
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    sxy = float(dx @ dy)
    syy = float(dy @ dy)
    slope = sxy / sxx
    ss_res = float(np.sum((dy - slope * dx) ** 2))
    r2 = 1.0 - ss_res / syy
    return TrendFit(slope, min(max(r2, 0.0), 1.0), False)


def window_trend(
    window: Sequence[OhlcvRecord], orientation: str = "close-on-volume"
) -> TrendFit:
    if len(window) < 2:
        raise ValueError("trend needs at least 2 records")
    closes = [r.close for r in window]
    volumes = [r.volume for r in window]
    if orientation == "close-on-volume":
        return ols_fit(volumes, closes)
    if orientation == "volume-on-close":
        return ols_fit(closes, volumes)
    raise ValueError(f"unknown trend orientation {orientation!r}; expected one of {ORIENTATIONS}")


def window_stats(
    window: Sequence[OhlcvRecord], orientation: str = "close-on-volume"
) -> WindowStats:
    fit = window_trend(window, orientation)
    return WindowStats(
        window_return=window_return(window),
        window_volume=window_volume(window),
        slope=fit.slope,
        r_squared=fit.r_squared,
        degenerate=fit.degenerate,
    )


def criteria_row(
    series: OhlcvSeries,
    spec: WindowSpec,
    ddof: int = 1,
    orientation: str = "close-on-volume",
) -> CriteriaRow:
    """Aggregate per-window statistics into the six criteria.

    Deviations use ``ddof`` (1 = sample estimator). At least two windows are
    required so that a deviation exists.
    """
    if ddof not in (0, 1):
        raise ValueError(f"ddof must be 0 or 1, got {ddof}")
    windows = enumerate_windows(series, spec)
    if len(windows) < 2:
        raise InsufficientDataError(f"{series.symbol}: too few windows", len(windows), 2)
    stats = [window_stats(w, orientation) for w in windows]
    returns = np.array([s.window_return for s in stats])
    volumes = np.array([s.window_volume for s in stats])
    return CriteriaRow(
        symbol=series.symbol,
        mean_return=float(returns.mean()),
        std_return=float(returns.std(ddof=ddof)),
        mean_volume=float(volumes.mean()),
        std_volume=float(volumes.std(ddof=ddof)),
        mean_slope=float(np.mean([s.slope for s in stats])),
        mean_r2=float(np.mean([s.r_squared for s in stats])),
        n_windows=len(stats),
        degenerate_fits=sum(s.degenerate for s in stats),
    )
