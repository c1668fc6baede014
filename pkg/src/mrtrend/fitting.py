"""Least-squares trend fits, R^2 scoring and exact point constructions.

All fitters take a :class:`~mrtrend.series.PriceSeries` and an inclusive
``(start, end)`` ordinal segment; the returned model has its origin at
``start`` so ``tau = 0`` on the first day of the segment.

R^2 is always computed against prices, including for the exponential fit
(which is solved on log prices), so scores from different families on the
same segment can be compared directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _accel
from .errors import (ConfigError, DegenerateInputError, DomainError,
                     SeriesLengthError, UndefinedVarianceError)
from .models import Family, TrendModel, evaluate
from .series import PriceSeries

__all__ = [
    "FitResult",
    "r_squared",
    "fit_linear",
    "fit_parabola",
    "fit_exponential",
    "fit_sinusoid",
    "fit_family",
    "exponential_line_through_two_points",
    "linear_line_through_two_points",
    "parabola_through_three_points",
]


@dataclass(frozen=True)
class FitResult:
    """A fitted trend over a segment.

    ``degenerate`` marks fits whose R^2 is not informative: a zero-variance
    segment (reported as R^2 = 1 when the fit is exact) or a sinusoid whose
    amplitude collapsed to zero.
    """

    model: TrendModel
    r_squared: float
    segment: tuple
    residual_rms: float
    degenerate: bool = False

    @property
    def family(self):
        return self.model.family

    @property
    def n_points(self):
        return self.segment[1] - self.segment[0] + 1


def r_squared(observed, predicted) -> float:
    """Coefficient of determination ``1 - SS_res / SS_tot``.

    Negative values are possible for fits worse than the mean.
    """
    obs = np.asarray(observed, dtype=np.float64)
    pred = np.asarray(predicted, dtype=np.float64)
    if obs.shape != pred.shape:
        raise ValueError("observed and predicted differ in length")
    if obs.size < 2:
        raise SeriesLengthError("R^2 needs at least 2 points")
    dev = obs - obs.mean()
    ss_tot = float(dev @ dev)
    if ss_tot == 0.0:
        raise UndefinedVarianceError("observed values have zero variance")
    res = obs - pred
    return 1.0 - float(res @ res) / ss_tot


def _segment(series, segment, min_len):
    start, end = series.check_segment(segment)
    n = end - start + 1
    if n < min_len:
        raise SeriesLengthError(f"segment has {n} points, need at least {min_len}")
    y = series.close[start:end + 1]
    tau = np.arange(n, dtype=np.float64)
    return start, end, tau, y


def _score(model, tau, y, start, end, degenerate=False):
    pred = evaluate(model, tau)
    res = y - pred
    rms = float(np.sqrt(np.mean(res * res)))
    try:
        r2 = r_squared(y, pred)
    except UndefinedVarianceError:
        # zero-variance segment: R^2 is undefined, report 1 only for an exact fit
        degenerate = True
        r2 = 1.0 if rms <= 1e-12 * max(1.0, float(np.max(np.abs(y)))) else 0.0
        if r2 == 1.0:
            rms = 0.0
    if r2 == 1.0 and rms > 0:
        r2 = math.nextafter(1.0, 0.0)
    return FitResult(model, float(r2), (start, end), rms, degenerate)


def _polyfit(tau, y, deg):
    """Least-squares polynomial coefficients (lowest order first).

    Solved on ``tau`` mapped to [-1, 1] for conditioning, then mapped back.
    """
    n = tau.shape[0]
    if np.all(y == y[0]):
        # exact answer for a flat segment; the solve would leave rounding noise
        out = np.zeros(deg + 1)
        out[0] = y[0]
        return out
    half = max((n - 1) / 2.0, 0.5)
    u = (tau - (n - 1) / 2.0) / half
    coef_u = np.polynomial.polynomial.polyfit(u, y, deg)
    # expand p(u) with u = (tau - c)/h into powers of tau
    poly = np.polynomial.Polynomial(coef_u)
    mapped = poly(np.polynomial.Polynomial([-(n - 1) / 2.0 / half, 1.0 / half]))
    out = np.zeros(deg + 1)
    out[:mapped.coef.shape[0]] = mapped.coef
    return out


def fit_linear(series: PriceSeries, segment=None) -> FitResult:
    """Ordinary least-squares straight line over ``segment``."""
    start, end, tau, y = _segment(series, segment, 2)
    c0, c1 = _polyfit(tau, y, 1)
    return _score(TrendModel.linear(c0, c1, start), tau, y, start, end)


def fit_parabola(series: PriceSeries, segment=None) -> FitResult:
    """Degree-2 least squares; the stored ``accel`` is twice the tau^2 term."""
    start, end, tau, y = _segment(series, segment, 3)
    c0, c1, c2 = _polyfit(tau, y, 2)
    return _score(TrendModel.from_quadratic(c0, c1, c2, start), tau, y, start, end)


def fit_exponential(series: PriceSeries, segment=None) -> FitResult:
    """Straight-line fit to log prices: ``level = exp(intercept)``, ``rate = slope``."""
    start, end, tau, y = _segment(series, segment, 2)
    if np.any(y <= 0):
        raise DomainError("exponential fit needs positive prices")
    c0, c1 = _polyfit(tau, np.log(y), 1)
    model = TrendModel.exponential(math.exp(c0), c1, start)
    return _score(model, tau, y, start, end)


def default_period_grid(n, minimum=4.0, step=1.0):
    """Every ``step`` days from ``minimum`` up to twice the segment length."""
    return np.arange(float(minimum), 2.0 * n + step / 2.0, float(step))


def fit_sinusoid(series: PriceSeries, segment=None, period_grid=None) -> FitResult:
    """Drifting sinusoid ``base + drift*tau + amp*sin(2*pi*tau/P + phase)``.

    For each candidate period ``P`` in ``period_grid`` the model is linear in
    ``(base, drift, a, b)`` with ``a*sin + b*cos``; the period with the
    smallest residual wins, the shortest one on ties. Amplitude and phase come
    from ``amp = hypot(a, b)``, ``phase = atan2(b, a)`` in (-pi, pi].
    """
    start, end, tau, y = _segment(series, segment, 8)
    n = tau.shape[0]
    periods = default_period_grid(n) if period_grid is None else np.asarray(
        period_grid, dtype=np.float64).ravel()
    if periods.size == 0:
        raise ConfigError("period grid is empty")
    if np.any(periods < 4) or np.any(periods > 2.0 * n):
        raise ConfigError(f"periods must lie in [4, {2 * n}] for a {n}-day segment")
    periods = np.unique(periods)

    ymean = float(y.mean())
    sse, _ = _accel.sinusoid_grid(tau, y - ymean, periods)
    finite = np.isfinite(sse)
    if not finite.any():
        raise DegenerateInputError("every candidate period gave a singular system")
    best = float(np.min(sse[finite]))
    # near-equal residuals count as ties so both kernels pick the same period
    tie = 1e-9 * float((y - ymean) @ (y - ymean)) + 1e-12
    period = float(periods[np.flatnonzero(finite & (sse <= best + tie))[0]])

    # final coefficients from a direct least-squares solve at the chosen period
    om = 2.0 * math.pi / period
    X = np.column_stack([np.ones(n), tau, np.sin(om * tau), np.cos(om * tau)])
    beta, *_ = np.linalg.lstsq(X, y, rcond=None)
    b0, b1, a, b = (float(v) for v in beta)
    amp = math.hypot(a, b)
    phase = math.atan2(b, a) if amp > 0 else 0.0
    if phase <= -math.pi:
        phase = math.pi
    scale = max(float(np.std(y)), 1e-12 * max(1.0, abs(ymean)))
    degenerate = amp <= 1e-9 * max(scale, abs(ymean))
    model = TrendModel.cyclic(b0, b1, amp, om, phase, start)
    return _score(model, tau, y, start, end, degenerate=degenerate)


def fit_family(series: PriceSeries, family, segment=None, period_grid=None) -> FitResult:
    """Dispatch to the fitter for ``family`` (name or :class:`Family`)."""
    family = Family.parse(family) if not isinstance(family, Family) else family
    if family is Family.LINEAR:
        return fit_linear(series, segment)
    if family is Family.PARABOLIC:
        return fit_parabola(series, segment)
    if family is Family.EXPONENTIAL:
        return fit_exponential(series, segment)
    return fit_sinusoid(series, segment, period_grid)


def _points(*pts):
    out = []
    for p in pts:
        t, v = p
        out.append((int(t) if float(t).is_integer() else float(t), float(v)))
    return out


def exponential_line_through_two_points(p1, p2) -> TrendModel:
    """Exponential line through ``(ordinal, price)`` points, origin at ``p1``."""
    (t1, x1), (t2, x2) = _points(p1, p2)
    if t1 == t2:
        raise DegenerateInputError("points share an ordinal")
    if x1 <= 0 or x2 <= 0:
        raise DomainError("exponential line needs positive prices")
    rate = math.log(x2 / x1) / (t2 - t1)
    return TrendModel.exponential(x1, rate, t1)


def linear_line_through_two_points(p1, p2) -> TrendModel:
    """Straight line through ``(ordinal, price)`` points, origin at ``p1``."""
    (t1, x1), (t2, x2) = _points(p1, p2)
    if t1 == t2:
        raise DegenerateInputError("points share an ordinal")
    return TrendModel.linear(x1, (x2 - x1) / (t2 - t1), t1)


def parabola_through_three_points(p1, p2, p3) -> TrendModel:
    """Unique quadratic through three ``(ordinal, price)`` points.

    The origin is the first point's ordinal; the 3x3 Vandermonde system is
    solved in offsets from it.
    """
    pts = _points(p1, p2, p3)
    t0 = pts[0][0]
    taus = [t - t0 for t, _ in pts]
    if len(set(taus)) < 3:
        raise DegenerateInputError("parabola needs three distinct ordinals")
    V = np.array([[1.0, u, u * u] for u in taus])
    rhs = np.array([v for _, v in pts])
    c0, c1, c2 = np.linalg.solve(V, rhs)
    return TrendModel.from_quadratic(c0, c1, c2, t0)
