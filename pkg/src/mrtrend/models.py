"""Parametric trend families and their kinematic signatures.

Four families describe a trend over an epoch, each evaluated at the
epoch-local day offset ``tau = t - origin``:

=========== ========================================== =========================
family      value                                      parameters
=========== ========================================== =========================
linear      level + slope*tau                          level ($), slope ($/day)
parabolic   level + slope*tau + accel*tau**2 / 2       + accel ($/day^2)
exponential level * exp(rate*tau)                      level ($), rate (1/day)
cyclic      base + drift*tau + amp*sin(freq*tau+phase) base, drift, amplitude,
                                                       freq (rad/day), phase
=========== ========================================== =========================

The cyclic family carries a base level and a linear drift on top of the pure
sinusoid; with ``base = drift = 0`` it is the bare ``amp*sin(freq*tau+phase)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "Family",
    "TrendModel",
    "evaluate",
    "analytic_speed",
    "analytic_acceleration",
    "classify_signature",
]


class Family(str, enum.Enum):
    LINEAR = "linear"
    PARABOLIC = "parabolic"
    EXPONENTIAL = "exponential"
    CYCLIC = "cyclic"

    @property
    def n_params(self):
        return _N_PARAMS[self]

    @classmethod
    def parse(cls, name):
        key = str(name).strip().lower()
        key = _ALIASES.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown trend family {name!r}") from None


_N_PARAMS = {Family.LINEAR: 2, Family.EXPONENTIAL: 2, Family.PARABOLIC: 3, Family.CYCLIC: 5}
_ALIASES = {"parabola": "parabolic", "quadratic": "parabolic", "exp": "exponential",
            "sinusoid": "cyclic", "sine": "cyclic", "sin": "cyclic", "line": "linear"}


@dataclass(frozen=True)
class TrendModel:
    """One trend instance. Unused parameters stay at zero for a family."""

    family: Family
    origin: int = 0
    level: float = 0.0
    slope: float = 0.0
    accel: float = 0.0
    rate: float = 0.0
    base: float = 0.0
    drift: float = 0.0
    amplitude: float = 0.0
    freq: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family is Family.EXPONENTIAL and not self.level > 0:
            raise ValueError("exponential level must be positive")
        if self.family is Family.CYCLIC:
            if self.amplitude < 0:
                raise ValueError("cyclic amplitude must be nonnegative")
            if not self.freq > 0:
                raise ValueError("cyclic angular frequency must be positive")

    @classmethod
    def linear(cls, level, slope, origin=0):
        return cls(Family.LINEAR, int(origin), level=float(level), slope=float(slope))

    @classmethod
    def parabolic(cls, level, slope, accel, origin=0):
        return cls(Family.PARABOLIC, int(origin), level=float(level), slope=float(slope),
                   accel=float(accel))

    @classmethod
    def from_quadratic(cls, c0, c1, c2, origin=0):
        """Parabola from raw polynomial coefficients ``c0 + c1*tau + c2*tau**2``."""
        return cls.parabolic(c0, c1, 2.0 * c2, origin)

    @classmethod
    def exponential(cls, level, rate, origin=0):
        return cls(Family.EXPONENTIAL, int(origin), level=float(level), rate=float(rate))

    @classmethod
    def cyclic(cls, base, drift, amplitude, freq, phase, origin=0):
        return cls(Family.CYCLIC, int(origin), base=float(base), drift=float(drift),
                   amplitude=float(amplitude), freq=float(freq), phase=float(phase))

    @property
    def period(self):
        """Cycle length in days (cyclic family only)."""
        return 2.0 * math.pi / self.freq if self.family is Family.CYCLIC else math.inf

    @property
    def quadratic_coefficient(self):
        return 0.5 * self.accel

    def params(self):
        """Family parameters as an ordered dict of name -> value."""
        names = {
            Family.LINEAR: ("level", "slope"),
            Family.PARABOLIC: ("level", "slope", "accel"),
            Family.EXPONENTIAL: ("level", "rate"),
            Family.CYCLIC: ("base", "drift", "amplitude", "freq", "phase"),
        }[self.family]
        return {k: getattr(self, k) for k in names}

    def shifted(self, origin):
        """Same curve re-expressed with a different origin."""
        origin = int(origin)
        d = origin - self.origin
        f = self.family
        if f is Family.LINEAR:
            return replace(self, origin=origin, level=self.level + self.slope * d)
        if f is Family.PARABOLIC:
            return replace(self, origin=origin,
                           level=float(evaluate(self, d)),
                           slope=self.slope + self.accel * d)
        if f is Family.EXPONENTIAL:
            return replace(self, origin=origin, level=self.level * math.exp(self.rate * d))
        return replace(self, origin=origin, base=self.base + self.drift * d,
                       phase=_wrap_phase(self.phase + self.freq * d))

    def at(self, ordinal):
        """Value at absolute trading-day ordinal(s)."""
        return evaluate(self, np.asarray(ordinal, dtype=np.float64) - self.origin)


def _wrap_phase(theta):
    """Map an angle into (-pi, pi]."""
    w = math.remainder(theta, 2.0 * math.pi)
    return math.pi if w <= -math.pi else w


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def evaluate(model: TrendModel, tau):
    """Trend value at day offset(s) ``tau`` from the model origin."""
    tau = np.asarray(tau, dtype=np.float64)
    f = model.family
    if f is Family.LINEAR:
        v = model.level + model.slope * tau
    elif f is Family.PARABOLIC:
        v = model.level + model.slope * tau + 0.5 * model.accel * tau * tau
    elif f is Family.EXPONENTIAL:
        v = model.level * np.exp(model.rate * tau)
    else:
        v = (model.base + model.drift * tau
             + model.amplitude * np.sin(model.freq * tau + model.phase))
    return _out(v)


def analytic_speed(model: TrendModel, tau):
    """First time derivative of the trend in $/day."""
    tau = np.asarray(tau, dtype=np.float64)
    f = model.family
    if f is Family.LINEAR:
        v = np.full_like(tau, model.slope)
    elif f is Family.PARABOLIC:
        v = model.slope + model.accel * tau
    elif f is Family.EXPONENTIAL:
        v = model.rate * model.level * np.exp(model.rate * tau)
    else:
        v = model.drift + model.freq * model.amplitude * np.cos(model.freq * tau + model.phase)
    return _out(v)


def analytic_acceleration(model: TrendModel, tau):
    """Second time derivative of the trend in $/day^2."""
    tau = np.asarray(tau, dtype=np.float64)
    f = model.family
    if f is Family.LINEAR:
        v = np.zeros_like(tau)
    elif f is Family.PARABOLIC:
        v = np.full_like(tau, model.accel)
    elif f is Family.EXPONENTIAL:
        v = model.rate ** 2 * model.level * np.exp(model.rate * tau)
    else:
        v = -(model.freq ** 2) * model.amplitude * np.sin(model.freq * tau + model.phase)
    return _out(v)


def classify_signature(accel, prices, tolerance=0.15):
    """Families consistent with an observed acceleration series.

    ``accel`` is a second-difference series (anything with ``values`` and
    ``offset``, or a bare array taken to start at ordinal 2); ``prices`` the
    series it came from. Each value of ``accel`` is compared with the close
    at its centre day. Rules, all judged at relative ``tolerance``:

    * parabolic: the acceleration is nearly constant and clearly nonzero;
    * exponential: acceleration/price is positive and nearly constant;
    * cyclic: acceleration is proportional, with a negative factor, to the
      detrended price;
    * linear: the acceleration vanishes, or averages to zero with no other
      family explaining it.

    Several families can be returned; the empty set is allowed.
    """
    a = np.asarray(getattr(accel, "values", accel), dtype=np.float64)
    offset = int(getattr(accel, "offset", 2))
    x = np.asarray(getattr(prices, "close", prices), dtype=np.float64)
    if a.size == 0:
        raise ValueError("acceleration series is empty")
    centre = x[offset - 1: offset - 1 + a.size]
    if centre.size != a.size:
        raise ValueError("prices do not cover the acceleration series")

    found = set()
    rms = float(np.sqrt(np.mean(a * a)))
    scale = float(np.mean(np.abs(centre)))
    if rms <= 1e-12 * max(scale, 1.0):
        return {Family.LINEAR}

    mean = float(np.mean(a))
    spread = float(np.std(a))
    if abs(mean) > 0 and spread <= tolerance * abs(mean):
        found.add(Family.PARABOLIC)

    ratio = a / centre
    rmean = float(np.mean(ratio))
    if rmean > 0 and np.all(ratio > 0) and float(np.std(ratio)) <= tolerance * rmean:
        found.add(Family.EXPONENTIAL)

    if a.size >= 4:
        tt = np.arange(a.size, dtype=np.float64)
        coef = np.polyfit(tt, centre, 1)
        detrended = centre - np.polyval(coef, tt)
        dd = float(np.dot(detrended, detrended))
        if dd > 0:
            k = float(np.dot(a, detrended)) / dd
            resid = a - k * detrended
            explained = 1.0 - float(np.dot(resid, resid)) / float(np.dot(a - mean, a - mean) or 1.0)
            if k < 0 and explained >= 1.0 - tolerance:
                found.add(Family.CYCLIC)

    if not found and abs(mean) <= tolerance * rms:
        found.add(Family.LINEAR)
    return found
