import numpy as np
import pytest

from mrtrend import (EventKind, ExtremumKind, ExtremumPoint, Geometry, PriceSeries, Role,
                     TrendModel, band_between, find_local_extrema, line_events,
                     line_through_extrema, role_after_cross)
from mrtrend.errors import (DegenerateInputError, InvalidEventError, KindMismatchError,
                            SeriesLengthError)
from mrtrend.lines import LineEvent, line_from_model, role_history


def mx(k, p):
    return ExtremumPoint(k, p, ExtremumKind.MAX)


def mn(k, p):
    return ExtremumPoint(k, p, ExtremumKind.MIN)


def test_extrema_simple():
    x = [1, 2, 5, 2, 1, 0, 1, 2, 3, 2, 1]
    pts = find_local_extrema(PriceSeries.from_values(np.array(x, float) + 1), 2)
    assert [(p.ordinal, p.kind) for p in pts] == [(2, ExtremumKind.MAX), (5, ExtremumKind.MIN),
                                                  (8, ExtremumKind.MAX)]


def test_extrema_plateau_first_wins():
    x = np.array([1, 1, 3, 3, 1, 1], float)
    pts = find_local_extrema(x, 1)
    assert [p.ordinal for p in pts if p.kind is ExtremumKind.MAX] == [2]


def test_extrema_edges_and_length():
    x = np.arange(1.0, 30.0)
    assert find_local_extrema(x, 3) == []
    with pytest.raises(SeriesLengthError):
        find_local_extrema(np.ones(5), 3)


def test_extrema_shift_and_scale_invariant(rng):
    x = 100 + rng.standard_normal(500).cumsum()
    base = [(p.ordinal, p.kind) for p in find_local_extrema(x, 5)]
    assert [(p.ordinal, p.kind) for p in find_local_extrema(x + 1000, 5)] == base
    assert [(p.ordinal, p.kind) for p in find_local_extrema(3.5 * x, 5)] == base


def test_line_roles_and_errors():
    assert line_through_extrema(mn(0, 10), mn(10, 20)).role is Role.SUPPORTING
    assert line_through_extrema(mx(0, 10), mx(10, 20)).role is Role.RESISTING
    with pytest.raises(KindMismatchError):
        line_through_extrema(mn(0, 10), mx(10, 20))
    with pytest.raises(DegenerateInputError):
        line_through_extrema(mn(4, 10), mn(4, 20))


def test_line_anchor_order_irrelevant():
    a = line_through_extrema(mn(10, 20), mn(0, 10))
    assert [p.ordinal for p in a.anchors] == [0, 10]
    assert a.value_at(5) == pytest.approx(15)


def test_exponential_line_through_anchors():
    line = line_through_extrema(mn(946, 41.22), mn(3390, 92.92), Geometry.EXPONENTIAL)
    assert line.value_at(946) == pytest.approx(41.22, rel=1e-12)
    assert line.value_at(3390) == pytest.approx(92.92, rel=1e-12)
    assert line.slope == pytest.approx(np.log(92.92 / 41.22) / 2444, rel=1e-12)


FLAT = line_through_extrema(mn(0, 100.0), mn(1, 100.0))


def events(x, line=FLAT, **kw):
    return [(e.ordinal, e.kind) for e in line_events(np.array(x, float), line, **kw)]


def test_cross_down_confirmed():
    x = [105, 104, 103, 99, 98, 97, 96]
    assert events(x, confirm=3) == [(3, EventKind.CROSS_DOWN)]


def test_short_breach_is_test():
    x = [105, 104, 99, 98, 104, 106]
    assert events(x, confirm=3) == [(2, EventKind.TEST)]


def test_tube_touch_is_test():
    x = [105, 104, 100.2, 99.8, 104]
    assert events(x, band=0.005) == [(2, EventKind.TEST)]


def test_cross_up_then_down():
    x = [95] * 3 + [105] * 4 + [95] * 4
    assert events(x, confirm=3) == [(3, EventKind.CROSS_UP), (7, EventKind.CROSS_DOWN)]


def test_cross_within_tube_not_counted():
    x = [100.3] * 3 + [99.7] * 5
    assert events(x, band=0.005) == []


def test_events_scale_invariant_and_shift_with_reference():
    rng = np.random.default_rng(1)
    x = 100 + 3 * np.sin(np.arange(300) / 7) + rng.standard_normal(300)
    base = events(x)
    scaled = line_through_extrema(mn(0, 250.0), mn(1, 250.0))
    assert events(2.5 * x, line=scaled) == base
    ref = events(x, reference=100.0)
    shifted = line_through_extrema(mn(0, 150.0), mn(1, 150.0))
    assert events(x + 50, line=shifted, reference=100.0) == ref


def test_events_start_end():
    x = [95] * 3 + [105] * 4 + [95] * 4
    assert events(x, start=5) == [(7, EventKind.CROSS_DOWN)]
    assert events(x, end=6) == [(3, EventKind.CROSS_UP)]


def test_role_after_cross():
    sup = line_through_extrema(mn(0, 10), mn(5, 11))
    down = LineEvent(9, EventKind.CROSS_DOWN, sup)
    up = LineEvent(9, EventKind.CROSS_UP, sup)
    assert role_after_cross(sup, down) is Role.RESISTING
    assert role_after_cross(sup, up) is Role.SUPPORTING
    res = line_through_extrema(mx(0, 10), mx(5, 11))
    assert role_after_cross(res, LineEvent(9, EventKind.CROSS_UP, res)) is Role.SUPPORTING
    with pytest.raises(InvalidEventError):
        role_after_cross(sup, LineEvent(9, EventKind.TEST, sup))


def test_role_history_flips():
    x = np.array([105] * 3 + [95] * 4 + [105] * 4, float)
    sup = line_through_extrema(mn(0, 100.0), mn(1, 100.0))
    evs = line_events(x, sup)
    hist = role_history(sup, evs)
    assert [r for _, r in hist] == [Role.SUPPORTING, Role.RESISTING, Role.SUPPORTING]
    assert [k for k, _ in hist[1:]] == [3, 7]


def test_band_between():
    s = line_through_extrema(mn(0, 10), mn(10, 20))
    r = line_through_extrema(mx(0, 15), mx(10, 25.5))
    b = band_between(s, r, tolerance=0.10)
    assert b.parallel
    assert b.midline(0) == pytest.approx(12.5)
    r2 = line_through_extrema(mx(0, 15), mx(10, 35))
    assert not band_between(s, r2).parallel


def test_line_from_model():
    line = line_from_model(TrendModel.exponential(10, 0.01), "supporting")
    assert line.geometry is Geometry.EXPONENTIAL
    with pytest.raises(ValueError):
        line_from_model(TrendModel.from_quadratic(1, 1, 1), "supporting")
