"""Shoulder-head-shoulder formations.

Three consecutive local maxima whose middle one is the highest form an SHS
(top); three consecutive minima with the lowest in the middle form a reversed
SHS (bottom). The parabola through the three extrema envelopes the formation:
open down for SHS, open up for RSHS. The neckline (maturation line) joins the
opposite-kind extremes between each shoulder and the head; a confirmed cross
of it after the right shoulder signals a further fall (SHS) or rise (RSHS).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .errors import IncompleteFormationError
from .fitting import parabola_through_three_points
from .lines import (DEFAULT_BAND, DEFAULT_CONFIRM, EventKind, ExtremumKind,
                    ExtremumPoint, Geometry, TrendLine, line_events,
                    line_through_extrema)
from .models import TrendModel, evaluate
from .series import PriceSeries

__all__ = [
    "FormationKind",
    "Formation",
    "Forecast",
    "detect_formations",
    "enveloping_parabola",
    "maturation_line",
    "with_neckline",
    "maturation_event",
    "forecast_levels",
]


class FormationKind(str, enum.Enum):
    SHS = "SHS"
    RSHS = "RSHS"

    @property
    def extremum_kind(self):
        return ExtremumKind.MAX if self is FormationKind.SHS else ExtremumKind.MIN

    @property
    def direction(self):
        """Expected move once the neckline is crossed."""
        return "fall" if self is FormationKind.SHS else "rise"


@dataclass(frozen=True)
class Formation:
    kind: FormationKind
    left: ExtremumPoint
    head: ExtremumPoint
    right: ExtremumPoint
    envelope: TrendModel
    neckline: TrendLine | None = None
    maturation_level: float | None = None
    base_level: float | None = None
    matured_at: int | None = None

    @property
    def span(self):
        return self.left.ordinal, self.right.ordinal


def _is_strict_middle(kind, a, b, c):
    if kind is FormationKind.SHS:
        return b.price > a.price and b.price > c.price
    return b.price < a.price and b.price < c.price


def detect_formations(extrema) -> list:
    """SHS/RSHS formations from an ordinal-ordered extrema sequence.

    Each kind is scanned on its own subsequence; every run of three
    consecutive same-kind extrema with a strictly more extreme middle one is
    reported, so formations may overlap. Shoulder symmetry is not required.
    """
    out = []
    for kind in (FormationKind.SHS, FormationKind.RSHS):
        pts = [p for p in extrema if p.kind is kind.extremum_kind]
        for a, b, c in zip(pts, pts[1:], pts[2:]):
            if a.ordinal < b.ordinal < c.ordinal and _is_strict_middle(kind, a, b, c):
                out.append(Formation(kind, a, b, c, _envelope(kind, a, b, c)))
    out.sort(key=lambda f: (f.head.ordinal, f.kind.value))
    return out


def _envelope(kind, a, b, c):
    model = parabola_through_three_points(a.point, b.point, c.point)
    if (kind is FormationKind.SHS) != (model.accel < 0):
        # the strict middle extreme fixes the curvature sign; guard anyway
        raise ValueError(f"{kind.value} envelope has the wrong curvature")
    return model


def enveloping_parabola(f: Formation) -> TrendModel:
    """Parabola through left shoulder, head and right shoulder."""
    return _envelope(f.kind, f.left, f.head, f.right)


def _flank(series, extrema, lo, hi, kind):
    """Most extreme ``kind`` point strictly between ordinals ``lo`` and ``hi``."""
    if extrema is not None:
        cands = [p for p in extrema if p.kind is kind and lo < p.ordinal < hi]
        if cands:
            if kind is ExtremumKind.MIN:
                return min(cands, key=lambda p: (p.price, p.ordinal))
            return max(cands, key=lambda p: (p.price, -p.ordinal))
    if hi - lo < 2:
        return None
    seg = series.close[lo + 1:hi]
    i = int(np.argmin(seg) if kind is ExtremumKind.MIN else np.argmax(seg))
    return ExtremumPoint(lo + 1 + i, float(seg[i]), kind)


def maturation_line(f: Formation, series: PriceSeries, extrema=None) -> TrendLine:
    """Neckline of ``f``.

    It passes through the lowest low (SHS) or highest high (RSHS) between
    the left shoulder and the head, and between the head and the right
    shoulder. Those points come from ``extrema`` when it has any in range,
    otherwise from the raw closes.
    """
    if f.right.ordinal >= len(series):
        raise IncompleteFormationError("series ends before the right shoulder")
    kind = f.kind.extremum_kind.opposite
    a = _flank(series, extrema, f.left.ordinal, f.head.ordinal, kind)
    b = _flank(series, extrema, f.head.ordinal, f.right.ordinal, kind)
    if a is None or b is None:
        raise IncompleteFormationError("no extremum between a shoulder and the head")
    return line_through_extrema(a, b, Geometry.LINEAR, label="neckline")


def with_neckline(f: Formation, series: PriceSeries, extrema=None) -> Formation:
    """Copy of ``f`` with neckline and maturation level (neckline value at
    the right shoulder) filled in."""
    neck = maturation_line(f, series, extrema)
    return replace(f, neckline=neck, maturation_level=float(neck.value_at(f.right.ordinal)))


def maturation_event(series: PriceSeries, f: Formation, band: float = DEFAULT_BAND,
                     confirm: int = DEFAULT_CONFIRM, extrema=None):
    """First confirmed neckline cross after the right shoulder.

    Returns ``(event, direction)`` with direction "fall" for an SHS broken
    downward and "rise" for an RSHS broken upward, or ``None`` when that has
    not happened (yet).
    """
    if f.neckline is None:
        f = with_neckline(f, series, extrema)
    want = EventKind.CROSS_DOWN if f.kind is FormationKind.SHS else EventKind.CROSS_UP
    events = line_events(series, f.neckline, band, confirm, start=f.right.ordinal)
    for ev in events:
        if ev.kind is want:
            return ev, f.kind.direction
    return None


@dataclass(frozen=True)
class Forecast:
    kind: FormationKind
    maturation_level: float
    base_level: float | None
    acceleration: float           # envelope accel, $/day^2
    target: float
    target_ordinal: int | None    # where the envelope reaches the target, if it does
    ordinals: np.ndarray          # projected envelope beyond the right shoulder
    envelope: np.ndarray

    @property
    def direction(self):
        return self.kind.direction


def forecast_levels(f: Formation, base=None, horizon=None, series=None) -> Forecast:
    """Levels implied by a formation.

    ``base`` is a caller-chosen floor (SHS) or ceiling (RSHS), e.g. where
    the move that built the left shoulder started. The target is ``base``
    when given and the maturation level otherwise; ``target_ordinal`` is the
    first day after the right shoulder on which the projected envelope
    reaches it. The projection runs ``horizon`` days (default: the
    formation's own length).
    """
    if f.maturation_level is None:
        if series is None:
            raise IncompleteFormationError("formation has no maturation level yet")
        f = with_neckline(f, series)
    env = f.envelope
    target = float(base) if base is not None else float(f.maturation_level)
    length = f.right.ordinal - f.left.ordinal
    horizon = int(horizon) if horizon is not None else max(length, 1)
    ords = np.arange(f.right.ordinal + 1, f.right.ordinal + 1 + horizon)
    proj = np.asarray(evaluate(env, ords - env.origin), dtype=np.float64)
    target_ordinal = _reach(env, f.right.ordinal, target, f.kind)
    return Forecast(f.kind, float(f.maturation_level),
                    None if base is None else float(base), float(env.accel),
                    target, target_ordinal, ords, proj)


def _reach(env, after, level, kind):
    """First integer ordinal past ``after`` where the envelope hits ``level``."""
    c2 = 0.5 * env.accel
    c1 = env.slope
    c0 = env.level - level
    tau0 = after - env.origin
    if c2 == 0:
        return None
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return None
    r = np.sqrt(disc)
    roots = sorted(((-c1 - r) / (2 * c2), (-c1 + r) / (2 * c2)))
    later = [t for t in roots if t > tau0]
    if not later:
        return None
    return int(np.ceil(later[0])) + env.origin
