"""Local extrema, supporting/resisting lines and their crossings.

A supporting line joins two local minima, a resisting line two local maxima.
Prices that stay beyond a line for ``confirm`` consecutive days (outside a
relative tolerance tube of half-width ``band``) have crossed it; dipping into
the tube and returning to the same side is a test. After a crossing the line
is expected to swap roles: broken support becomes resistance and vice versa.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _accel
from .errors import (DegenerateInputError, DomainError, InvalidEventError,
                     KindMismatchError, SeriesLengthError)
from .fitting import exponential_line_through_two_points, linear_line_through_two_points
from .models import Family, TrendModel
from .series import PriceSeries

__all__ = [
    "ExtremumKind",
    "Role",
    "Geometry",
    "EventKind",
    "ExtremumPoint",
    "TrendLine",
    "LineEvent",
    "Band",
    "find_local_extrema",
    "line_through_extrema",
    "line_events",
    "role_after_cross",
    "band_between",
]

DEFAULT_WINDOW = 10
DEFAULT_BAND = 0.005
DEFAULT_CONFIRM = 3


class ExtremumKind(str, enum.Enum):
    MAX = "max"
    MIN = "min"

    @property
    def opposite(self):
        return ExtremumKind.MIN if self is ExtremumKind.MAX else ExtremumKind.MAX


class Role(str, enum.Enum):
    SUPPORTING = "supporting"
    RESISTING = "resisting"


class Geometry(str, enum.Enum):
    LINEAR = "linear"
    EXPONENTIAL = "exponential"


class EventKind(str, enum.Enum):
    CROSS_UP = "cross_up"
    CROSS_DOWN = "cross_down"
    TEST = "test"


@dataclass(frozen=True)
class ExtremumPoint:
    ordinal: int
    price: float
    kind: ExtremumKind
    label: str = ""

    @property
    def point(self):
        return self.ordinal, self.price


@dataclass(frozen=True)
class TrendLine:
    """A line anchored at two same-kind extrema (``anchors`` in ordinal order)."""

    geometry: Geometry
    role: Role
    anchors: tuple
    model: TrendModel
    label: str = ""

    def value_at(self, ordinal):
        return self.model.at(ordinal)

    @property
    def slope(self):
        """Linear slope ($/day) or exponential rate (1/day)."""
        if self.geometry is Geometry.EXPONENTIAL:
            return self.model.rate
        return self.model.slope


@dataclass(frozen=True)
class LineEvent:
    ordinal: int
    kind: EventKind
    line: TrendLine

    @property
    def is_cross(self):
        return self.kind is not EventKind.TEST


def find_local_extrema(series, window: int = DEFAULT_WINDOW):
    """Local maxima and minima of the close, merged in ordinal order.

    An ordinal qualifies when its close is the extreme of the centred
    ``2*window + 1`` day window, so the first and last ``window`` days never
    qualify. Among equal closes in a window the earliest wins. Maxima and
    minima are not forced to alternate.
    """
    x = getattr(series, "close", series)
    x = np.ascontiguousarray(x, dtype=np.float64)
    w = int(window)
    if w < 1:
        raise ValueError("extrema window must be at least 1 day")
    if x.shape[0] <= 2 * w:
        raise SeriesLengthError(f"series of {x.shape[0]} days is too short for window {w}")
    imax, imin = _accel.local_extrema(x, w)
    pts = [ExtremumPoint(int(k), float(x[k]), ExtremumKind.MAX) for k in imax]
    pts += [ExtremumPoint(int(k), float(x[k]), ExtremumKind.MIN) for k in imin]
    pts.sort(key=lambda p: p.ordinal)
    return pts


def line_through_extrema(a: ExtremumPoint, b: ExtremumPoint, geometry=Geometry.LINEAR,
                         label="") -> TrendLine:
    """Supporting (minima) or resisting (maxima) line through two extrema."""
    if a.kind is not b.kind:
        raise KindMismatchError("a line joins two extrema of the same kind")
    if a.ordinal == b.ordinal:
        raise DegenerateInputError("anchors share an ordinal")
    geometry = Geometry(geometry)
    a, b = sorted((a, b), key=lambda p: p.ordinal)
    if geometry is Geometry.EXPONENTIAL:
        if a.price <= 0 or b.price <= 0:
            raise DomainError("exponential line needs positive anchors")
        model = exponential_line_through_two_points(a.point, b.point)
    else:
        model = linear_line_through_two_points(a.point, b.point)
    role = Role.SUPPORTING if a.kind is ExtremumKind.MIN else Role.RESISTING
    return TrendLine(geometry, role, (a, b), model, label)


def line_from_model(model: TrendModel, role, anchors=(), label="") -> TrendLine:
    """Wrap an existing linear or exponential model as a line."""
    if model.family is Family.EXPONENTIAL:
        geometry = Geometry.EXPONENTIAL
    elif model.family is Family.LINEAR:
        geometry = Geometry.LINEAR
    else:
        raise ValueError("lines are linear or exponential")
    return TrendLine(geometry, Role(role), tuple(anchors), model, label)


def _side_codes(close, line_values, band, reference):
    if reference is not None:
        dev = (close - line_values) / float(reference)
    else:
        dev = (close - line_values) / np.abs(line_values)
    state = np.zeros(close.shape[0], dtype=np.int8)
    state[dev > band] = 1
    state[dev < -band] = -1
    return state


def line_events(series: PriceSeries, line: TrendLine, band: float = DEFAULT_BAND,
                confirm: int = DEFAULT_CONFIRM, start: int = 0, end=None,
                reference=None):
    """Crossings and tests of ``line`` by the close over ``[start, end]``.

    A day is above/below the line when the close deviates from it by more
    than ``band`` times the line value (or times ``reference`` when given,
    which makes the tube a fixed dollar width). ``cross_down`` is dated at the
    first of ``confirm`` consecutive days below the tube after having been
    above it; ``cross_up`` mirrors it. An excursion into the tube (or a
    shorter breach) that returns to the same side is one ``test``. Crosses
    alternate in direction.
    """
    if band < 0:
        raise ValueError("band must be nonnegative")
    if confirm < 1:
        raise ValueError("confirm must be at least 1 day")
    x = getattr(series, "close", series)
    x = np.asarray(x, dtype=np.float64)
    stop = x.shape[0] - 1 if end is None else min(int(end), x.shape[0] - 1)
    start = max(int(start), 0)
    if start > stop:
        return []
    ords = np.arange(start, stop + 1)
    state = _side_codes(x[start:stop + 1], line.value_at(ords), band, reference)
    idx, kinds = _accel.scan_line_states(state, int(confirm))
    names = {1: EventKind.CROSS_UP, -1: EventKind.CROSS_DOWN, 0: EventKind.TEST}
    return [LineEvent(int(i) + start, names[int(k)], line) for i, k in zip(idx, kinds)]


def role_after_cross(line: TrendLine, event: LineEvent) -> Role:
    """Role of ``line`` once ``event`` has happened.

    Broken support turns into resistance, a resisting line crossed upward turns
    into support; a cross in the other direction leaves the role unchanged.
    """
    if event.kind is EventKind.TEST:
        raise InvalidEventError("a test does not change a line's role")
    if line.role is Role.SUPPORTING and event.kind is EventKind.CROSS_DOWN:
        return Role.RESISTING
    if line.role is Role.RESISTING and event.kind is EventKind.CROSS_UP:
        return Role.SUPPORTING
    return line.role


def role_history(line: TrendLine, events):
    """``[(ordinal, role), ...]`` starting with the line's initial role."""
    hist = [(line.anchors[-1].ordinal if line.anchors else 0, line.role)]
    role = line.role
    for ev in events:
        if ev.is_cross:
            new = role_after_cross(TrendLine(line.geometry, role, line.anchors, line.model), ev)
            if new is not role:
                role = new
                hist.append((ev.ordinal, role))
    return hist


@dataclass(frozen=True)
class Band:
    """A supporting and a resisting line considered together."""

    support: TrendLine
    resist: TrendLine
    parallel: bool

    def midline(self, ordinals):
        """Pointwise average of the two lines."""
        return 0.5 * (self.support.value_at(ordinals) + self.resist.value_at(ordinals))


def band_between(support: TrendLine, resist: TrendLine, tolerance: float = 0.10) -> Band:
    """Pair two lines and decide whether they run parallel.

    Slopes (linear) or rates (exponential) must agree within ``tolerance``
    relative to the larger magnitude; two flat lines are parallel. Lines of
    different geometry are never parallel.
    """
    if support.geometry is not resist.geometry:
        return Band(support, resist, False)
    s1, s2 = support.slope, resist.slope
    big = max(abs(s1), abs(s2))
    parallel = big == 0 or abs(s1 - s2) <= tolerance * big
    return Band(support, resist, bool(parallel))
