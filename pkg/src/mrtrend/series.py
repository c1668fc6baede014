"""Daily price series and its discrete kinematics.

Prices are indexed by trading-day ordinal ``t = 0, 1, ...``; non-trading days
are simply absent rows. The first difference of the close is the daily return,
which doubles as the (numerical) speed in $/day; the second difference is the
acceleration in $/day^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BoundsError, DomainError, SeriesLengthError

__all__ = [
    "PriceSeries",
    "DiffSeries",
    "daily_returns",
    "speed_series",
    "acceleration_series",
]


def _frozen(a, dtype):
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PriceSeries:
    """Dated daily closes (adjusted, $) with volume ($/day).

    ``adjusted`` is False when the source had no adjusted-close column and the
    raw close was used instead.
    """

    dates: np.ndarray
    close: np.ndarray
    volume: np.ndarray | None = None
    adjusted: bool = True
    name: str = ""

    def __post_init__(self):
        close = _frozen(self.close, np.float64)
        if close.ndim != 1:
            raise ValueError("close must be one-dimensional")
        n = close.shape[0]
        if n < 2:
            raise SeriesLengthError(f"series needs at least 2 rows, got {n}")
        dates = _frozen(self.dates, "datetime64[D]")
        volume = np.zeros(n) if self.volume is None else self.volume
        volume = _frozen(volume, np.float64)
        if dates.shape != (n,) or volume.shape != (n,):
            raise DomainError("dates, close and volume must have equal length")
        if not np.all(np.isfinite(close)) or np.any(close <= 0):
            bad = int(np.flatnonzero(~(close > 0) | ~np.isfinite(close))[0])
            raise DomainError(f"close must be finite and positive (ordinal {bad})")
        if np.any(volume < 0):
            raise DomainError("volume must be nonnegative")
        if np.any(np.diff(dates) <= np.timedelta64(0, "D")):
            raise DomainError("dates must be strictly increasing")
        object.__setattr__(self, "close", close)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "volume", volume)

    @classmethod
    def from_values(cls, close, start="2000-01-03", volume=None, name=""):
        """Build a series on consecutive business days starting at ``start``.

        Convenient for synthetic data where only the ordinal matters.
        """
        close = np.asarray(close, dtype=np.float64)
        first = np.busday_offset(np.datetime64(start, "D"), 0, roll="forward")
        dates = np.busday_offset(first, np.arange(close.shape[0]))
        return cls(dates=dates, close=close, volume=volume, name=name)

    def __len__(self):
        return self.close.shape[0]

    @property
    def t(self):
        return np.arange(len(self))

    def ordinal_of(self, date, side="left"):
        """Ordinal of ``date``; with side="left" the first row on/after it,
        with side="right" the last row on/before it."""
        d = np.datetime64(date, "D")
        if side == "left":
            return int(np.searchsorted(self.dates, d, side="left"))
        return int(np.searchsorted(self.dates, d, side="right")) - 1

    def check_segment(self, segment):
        """Normalize ``segment`` to an inclusive ``(start, end)`` pair."""
        if segment is None:
            return 0, len(self) - 1
        start, end = int(segment[0]), int(segment[1])
        if start < 0 or end >= len(self) or start > end:
            raise BoundsError(f"segment [{start}, {end}] outside [0, {len(self) - 1}]")
        return start, end

    def slice(self, start, end):
        """Rows ``start..end`` inclusive as a new series (ordinals restart at 0)."""
        start, end = self.check_segment((start, end))
        s = slice(start, end + 1)
        return PriceSeries(self.dates[s], self.close[s], self.volume[s],
                           adjusted=self.adjusted, name=self.name)


@dataclass(frozen=True, eq=False)
class DiffSeries:
    """Finite-difference series; ``values[k]`` belongs to ordinal ``k + offset``."""

    values: np.ndarray
    offset: int
    units: str = field(default="$/day")

    def __len__(self):
        return self.values.shape[0]

    @property
    def ordinals(self):
        return np.arange(self.offset, self.offset + len(self))


def _closes(series):
    if isinstance(series, PriceSeries):
        return series.close
    return np.asarray(series, dtype=np.float64)


def daily_returns(series) -> DiffSeries:
    """First difference of the close, ``close[k] - close[k-1]``."""
    x = _closes(series)
    if x.shape[0] < 2:
        raise SeriesLengthError("daily returns need at least 2 closes")
    return DiffSeries(_frozen(np.diff(x), np.float64), offset=1, units="$/day")


# Speed is the daily return read as a rate; no unit conversion is applied.
speed_series = daily_returns


def acceleration_series(series) -> DiffSeries:
    """Second difference of the close, in $/day^2."""
    x = _closes(series)
    if x.shape[0] < 3:
        raise SeriesLengthError("acceleration needs at least 3 closes")
    return DiffSeries(_frozen(np.diff(x, n=2), np.float64), offset=2, units="$/day^2")
