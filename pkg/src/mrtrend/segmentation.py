"""Epoch segmentation and trend-plus-residual decomposition.

An epoch runs from its first day until prices make a confirmed cross of one
of its bounding lines: down through the supporting line or up through the
resisting line. The first ``min_epoch_length`` days of an epoch define it;
crossings are only looked for after that. The bounding lines are re-drawn
every time a new local extremum inside the epoch is confirmed (``window``
days after it occurs); see ``_LineTracker`` for how the anchors are chosen.

After a cross, the next epoch starts on the crossing day if its defining
window holds a trend with R^2 of at least ``min_r2``; otherwise days are
handed to a transition gap until one does. A tail shorter than
``min_epoch_length`` also becomes a gap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import Config
from .errors import BoundsError, SeriesLengthError
from .fitting import FitResult, fit_exponential, fit_linear, fit_parabola, fit_sinusoid
from .lines import (ExtremumKind, ExtremumPoint, Geometry, TrendLine,
                    find_local_extrema, line_through_extrema)
from .models import Family
from .series import PriceSeries

__all__ = ["Epoch", "fit_best", "segment_epochs", "decompose", "partition"]

_FAMILY_ORDER = (Family.LINEAR, Family.EXPONENTIAL, Family.PARABOLIC, Family.CYCLIC)


@dataclass(frozen=True, eq=False)
class Epoch:
    n: int
    start: int
    end: int
    fit: FitResult
    support: TrendLine | None = None
    resist: TrendLine | None = None
    residuals: np.ndarray = field(default_factory=lambda: np.empty(0))
    transition_gap: tuple | None = None
    candidates: dict = field(default_factory=dict)
    ended_by: str = "end_of_data"   # or "cross_down", "cross_up"

    @property
    def model(self):
        return self.fit.model

    @property
    def family(self):
        return self.fit.model.family

    def __len__(self):
        return self.end - self.start + 1


def fit_best(series: PriceSeries, segment, config: Config = Config()):
    """Fit every family on ``segment`` and keep the best by R^2.

    Families within ``tie_delta_r2`` of the top score compete on parameter
    count; fewer parameters win, then the higher R^2, then the fixed order
    linear, exponential, parabolic, cyclic. Returns ``(best, all_fits)``.
    """
    start, end = series.check_segment(segment)
    n = end - start + 1
    fits = {Family.LINEAR: fit_linear(series, (start, end))}
    fits[Family.EXPONENTIAL] = fit_exponential(series, (start, end))
    if n >= 3:
        fits[Family.PARABOLIC] = fit_parabola(series, (start, end))
    if n >= 8:
        fits[Family.CYCLIC] = fit_sinusoid(series, (start, end), config.period_grid(n))
    top = max(f.r_squared for f in fits.values())
    close = [f for f in fits.values() if f.r_squared >= top - config.tie_delta_r2]
    best = min(close, key=lambda f: (f.family.n_params, -f.r_squared,
                                     _FAMILY_ORDER.index(f.family)))
    return best, fits


class _LineTracker:
    """Redraws an epoch's bounding lines as extrema get confirmed.

    The supporting line is the edge of the lower convex hull of the epoch's
    minima (in price or log-price space) whose slope is closest to the
    straight-line trend of the epoch so far, so it never cuts through an
    earlier low. The resisting line uses the upper hull of the maxima. An
    edge whose slope strays from the trend by more than ``slack`` times the
    daily noise level over the span is not used, and neither is one shorter
    than ``3 * window`` days; among the rest the longest edge wins. When no
    edge qualifies the previous line stays in force. The geometry (price or
    log price) follows whichever straight-line fit explains the span better.
    """

    slack = 4.0
    widen = 1.0

    def __init__(self, close, start, geometry, maxima, minima, window=0):
        self.window = window
        self.min_span = 3 * window
        self.close = close
        self.start = start
        self.geometry = geometry
        self.maxima = maxima
        self.minima = minima
        self._n_seen = (-1, -1)
        self.support = None
        self.resist = None
        self.noise = 0.0

    def margin(self, line, k):
        """Extra tube width for extrapolating ``line`` to day ``k``."""
        if not self.widen:
            return 0.0
        a, b = line.anchors
        d = max(k - b.ordinal, 0) / (b.ordinal - a.ordinal)
        width = self.widen * np.sqrt(2.0) * self.noise * d
        if line.geometry is Geometry.EXPONENTIAL:
            return abs(line.value_at(k)) * width
        return width

    def update(self, limit):
        """Use extrema with ordinal in ``[start, limit]``."""
        lo_max = np.searchsorted(self.maxima, self.start)
        hi_max = np.searchsorted(self.maxima, limit, side="right")
        lo_min = np.searchsorted(self.minima, self.start)
        hi_min = np.searchsorted(self.minima, limit, side="right")
        seen = (hi_max - lo_max, hi_min - lo_min)
        if seen == self._n_seen:
            return
        self._n_seen = seen
        m = limit - self.start + 1
        if m < 3:
            return
        self.geometry = _choose_geometry(self.close, self.start, limit)
        y = self.close[self.start:limit + 1]
        if self.geometry is Geometry.EXPONENTIAL:
            y = np.log(y)
        slope = np.polyfit(np.arange(m, dtype=np.float64), y, 1)[0]
        self.noise = _noise_scale(y)
        tol = self.slack * self.noise / (m - 1)
        sup = self._line(self.minima[lo_min:hi_min], slope, tol, ExtremumKind.MIN)
        res = self._line(self.maxima[lo_max:hi_max], slope, tol, ExtremumKind.MAX)
        self.support = sup or self.support
        self.resist = res or self.resist

    def _line(self, ords, trend_slope, tol, kind):
        if ords.size < 2:
            return None
        price = self.close[ords]
        level = np.log(price) if self.geometry is Geometry.EXPONENTIAL else price
        hull = _hull(ords.astype(np.float64), level, lower=kind is ExtremumKind.MIN)
        best = None
        for i, j in zip(hull[:-1], hull[1:]):
            span = ords[j] - ords[i]
            if span < self.min_span:
                continue
            s = (level[j] - level[i]) / span
            if abs(s - trend_slope) > tol:
                continue
            key = (-span, -ords[j])
            if best is None or key < best[0]:
                best = (key, i, j)
        if best is None:
            return None
        _, i, j = best
        a = ExtremumPoint(int(ords[i]), float(price[i]), kind)
        b = ExtremumPoint(int(ords[j]), float(price[j]), kind)
        return line_through_extrema(a, b, self.geometry)


def _hull(x, y, lower=True):
    """Indices of the lower (or upper) convex hull of points sorted by ``x``."""
    sign = 1.0 if lower else -1.0
    out = []
    for k in range(x.shape[0]):
        while len(out) >= 2:
            i, j = out[-2], out[-1]
            cross = (x[j] - x[i]) * (y[k] - y[i]) - (y[j] - y[i]) * (x[k] - x[i])
            if sign * cross <= 0:
                out.pop()
            else:
                break
        out.append(k)
    return out


def _choose_geometry(close, start, end):
    y = close[start:end + 1]
    tau = np.arange(y.size, dtype=np.float64)
    lin = np.polyval(np.polyfit(tau, y, 1), tau)
    exp = np.exp(np.polyval(np.polyfit(tau, np.log(y), 1), tau))
    sse_lin = float(np.sum((y - lin) ** 2))
    sse_exp = float(np.sum((y - exp) ** 2))
    return Geometry.EXPONENTIAL if sse_exp < sse_lin else Geometry.LINEAR


def _noise_scale(y):
    """Robust day-to-day noise level: scaled MAD of first differences / sqrt(2)."""
    d = np.diff(y)
    if d.size == 0:
        return 0.0
    mad = float(np.median(np.abs(d - np.median(d))))
    return 1.4826 * mad / np.sqrt(2.0)


def _find_cross(close, tracker, first_day, window, band, confirm):
    """First confirmed cross from ``first_day`` on, as ``(ordinal, kind)``."""
    n = close.shape[0]
    below_start = above_start = -1
    for k in range(first_day, n):
        tracker.update(k - 1 - window)
        x = close[k]
        sup, res = tracker.support, tracker.resist
        if sup is not None:
            lv = sup.value_at(k)
            if x < lv - band * abs(lv) - tracker.margin(sup, k):
                if below_start < 0:
                    below_start = k
                if k - below_start + 1 >= confirm:
                    return below_start, "cross_down"
            else:
                below_start = -1
        if res is not None:
            lv = res.value_at(k)
            if x > lv + band * abs(lv) + tracker.margin(res, k):
                if above_start < 0:
                    above_start = k
                if k - above_start + 1 >= confirm:
                    return above_start, "cross_up"
            else:
                above_start = -1
    return None, "end_of_data"


def segment_epochs(series: PriceSeries, config: Config = Config()):
    """Split ``series`` into epochs separated by confirmed line crossings.

    Returns epochs in order; each carries the best-family fit over its span,
    its final bounding lines, residuals and the transition gap that follows
    it (if any). Epochs and gaps together cover every ordinal exactly once.
    """
    n = len(series)
    L0 = int(config.min_epoch_length)
    if n < L0:
        raise SeriesLengthError(f"series of {n} days is shorter than min_epoch_length={L0}")
    close = series.close
    w = int(config.window)
    if n > 2 * w:
        ext = find_local_extrema(series, w)
    else:
        ext = []
    maxima = np.array([p.ordinal for p in ext if p.kind is ExtremumKind.MAX], dtype=np.int64)
    minima = np.array([p.ordinal for p in ext if p.kind is ExtremumKind.MIN], dtype=np.int64)

    spans = []   # (start, end, support, resist, ended_by)
    gaps = []
    s = 0
    step = max(1, L0 // 10)
    while s < n:
        if n - s < L0:
            gaps.append((s, n - 1))
            break
        if spans:
            best, _ = fit_best(series, (s, s + L0 - 1), config)
            if best.r_squared < config.min_r2 and not best.degenerate:
                g_end = min(s + step, n) - 1
                gaps.append((s, g_end))
                s = g_end + 1
                continue
        geometry = _choose_geometry(close, s, s + L0 - 1)
        tracker = _LineTracker(close, s, geometry, maxima, minima, w)
        cross, how = _find_cross(close, tracker, s + L0, w, config.band, config.confirm)
        end = n - 1 if cross is None else cross - 1
        spans.append((s, end, tracker.support, tracker.resist, how))
        s = end + 1

    gaps = _merge(gaps)
    epochs = []
    for i, (a, b, sup, res, how) in enumerate(spans):
        best, fits = fit_best(series, (a, b), config)
        gap = next(((g0, g1) for g0, g1 in gaps if g0 == b + 1), None)
        resid = close[a:b + 1] - best.model.at(np.arange(a, b + 1))
        resid.setflags(write=False)
        epochs.append(Epoch(
            n=i + 1, start=a, end=b, fit=best,
            support=_label(sup, f"S{i + 1}"), resist=_label(res, f"R{i + 1}"),
            residuals=resid, transition_gap=gap,
            candidates={f.value: fits[f].r_squared for f in fits},
            ended_by=how,
        ))
    return epochs


def _label(line, label):
    if line is None:
        return None
    return TrendLine(line.geometry, line.role, line.anchors, line.model, label)


def _merge(gaps):
    out = []
    for g in sorted(gaps):
        if out and g[0] <= out[-1][1] + 1:
            out[-1] = (out[-1][0], max(out[-1][1], g[1]))
        else:
            out.append(g)
    return out


def partition(epochs, n):
    """Epoch spans and gaps as sorted ``(start, end, tag)`` triples over ``[0, n)``."""
    parts = []
    for e in epochs:
        parts.append((e.start, e.end, f"epoch {e.n}"))
        if e.transition_gap is not None:
            parts.append((e.transition_gap[0], e.transition_gap[1], "gap"))
    parts.sort()
    return parts


def decompose(series: PriceSeries, epochs):
    """Residual ``close - trend`` over each epoch, one array per epoch."""
    n = len(series)
    out = []
    for e in epochs:
        if e.start < 0 or e.end >= n or e.start > e.end:
            raise BoundsError(f"epoch [{e.start}, {e.end}] outside series of {n} days")
        ords = np.arange(e.start, e.end + 1)
        out.append(series.close[e.start:e.end + 1] - e.model.at(ords))
    return out
