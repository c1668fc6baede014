import numpy as np
import pytest

from synth import as_series, mirror, piecewise, random_shs
from mrtrend import (ExtremumKind, ExtremumPoint, FormationKind, detect_formations,
                     enveloping_parabola, find_local_extrema, forecast_levels,
                     maturation_event, maturation_line, with_neckline)
from mrtrend.errors import IncompleteFormationError


def mx(k, p):
    return ExtremumPoint(k, p, ExtremumKind.MAX)


def mn(k, p):
    return ExtremumPoint(k, p, ExtremumKind.MIN)


def test_detects_shs_and_rshs():
    ext = [mx(10, 110), mn(20, 100), mx(30, 120), mn(40, 101), mx(50, 112), mn(60, 90)]
    fs = detect_formations(ext)
    assert [(f.kind, f.head.ordinal) for f in fs] == [(FormationKind.SHS, 30)]
    ext2 = [mn(10, 90), mx(20, 100), mn(30, 80), mx(40, 99), mn(50, 91)]
    (f,) = detect_formations(ext2)
    assert f.kind is FormationKind.RSHS and f.envelope.accel > 0


def test_no_formation_without_strict_head():
    ext = [mx(10, 110), mx(30, 110), mx(50, 100)]
    assert detect_formations(ext) == []


def test_envelope_passes_through_extrema():
    ext = [mx(10, 110), mx(30, 120), mx(50, 112)]
    (f,) = detect_formations(ext)
    env = enveloping_parabola(f)
    for p in ext:
        assert env.at(p.ordinal) == pytest.approx(p.price, rel=1e-12)
    assert env.accel < 0


def shs_case(seed):
    close, knots = random_shs(np.random.default_rng(seed))
    s = as_series(close)
    ext = find_local_extrema(s, 5)
    return s, ext, knots


def test_neckline_through_troughs():
    s, ext, knots = shs_case(0)
    (f,) = [f for f in detect_formations(ext) if f.head.ordinal == knots["head"]]
    line = maturation_line(f, s, ext)
    assert [p.ordinal for p in line.anchors] == [knots["n1"], knots["n2"]]
    g = with_neckline(f, s, ext)
    assert g.maturation_level == pytest.approx(line.value_at(knots["right"]))


def test_maturation_event_shs():
    s, ext, knots = shs_case(1)
    (f,) = [f for f in detect_formations(ext) if f.head.ordinal == knots["head"]]
    ev, direction = maturation_event(s, f, extrema=ext)
    assert direction == "fall" and ev.ordinal > knots["right"]


def test_incomplete_formation():
    s, ext, knots = shs_case(2)
    (f,) = [f for f in detect_formations(ext) if f.head.ordinal == knots["head"]]
    short = as_series(s.close[:knots["right"]])
    with pytest.raises(IncompleteFormationError):
        maturation_line(f, short, ext)
    with pytest.raises(IncompleteFormationError):
        forecast_levels(f)


def test_forecast_levels():
    s, ext, knots = shs_case(3)
    (f,) = [f for f in detect_formations(ext) if f.head.ordinal == knots["head"]]
    f = with_neckline(f, s, ext)
    fc = forecast_levels(f)
    assert fc.target == f.maturation_level and fc.acceleration < 0
    assert fc.direction == "fall"
    # the downward parabola passes the neckline level after the right shoulder
    assert fc.target_ordinal > knots["right"]
    assert f.envelope.at(fc.target_ordinal) <= fc.target
    assert f.envelope.at(fc.target_ordinal - 1) > fc.target
    fb = forecast_levels(f, base=50.0, horizon=10)
    assert fb.target == 50.0 and fb.base_level == 50.0 and len(fb.ordinals) == 10


@pytest.mark.parametrize("seed", range(25))
def test_mirror_symmetry(seed):
    close, knots = random_shs(np.random.default_rng(seed))
    top = detect_formations(find_local_extrema(close, 5))
    bottom = detect_formations(find_local_extrema(mirror(close), 5))
    assert len(top) == len(bottom)
    for a, b in zip(top, bottom):
        assert b.kind is not a.kind
        assert (a.left.ordinal, a.head.ordinal, a.right.ordinal) == \
            (b.left.ordinal, b.head.ordinal, b.right.ordinal)
        assert b.envelope.accel == pytest.approx(-a.envelope.accel, rel=1e-9, abs=1e-12)


def test_rshs_breaks_upward():
    close, knots = random_shs(np.random.default_rng(11))
    s = as_series(mirror(close))
    ext = find_local_extrema(s, 5)
    (f,) = [f for f in detect_formations(ext) if f.head.ordinal == knots["head"]]
    assert f.kind is FormationKind.RSHS
    ev, direction = maturation_event(s, f, extrema=ext)
    assert direction == "rise" and ev.ordinal > knots["right"]


def test_flank_falls_back_to_raw_closes():
    close = piecewise([(0, 90), (20, 110), (40, 100), (60, 120), (80, 101), (100, 112), (130, 80)])
    f = detect_formations([mx(20, 110), mx(60, 120), mx(100, 112)])[0]
    line = maturation_line(f, as_series(close), extrema=None)
    assert [p.ordinal for p in line.anchors] == [40, 80]
