import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mrtrend import (Family, PriceSeries, TrendModel, evaluate, exponential_line_through_two_points,
                     fit_exponential, fit_family, fit_linear, fit_parabola, fit_sinusoid,
                     linear_line_through_two_points, parabola_through_three_points, r_squared)
from mrtrend.errors import (ConfigError, DegenerateInputError, DomainError,
                            UndefinedVarianceError)


def series_of(model, n):
    return PriceSeries.from_values(evaluate(model, np.arange(n, dtype=float)))


def test_r_squared_basic():
    y = np.array([1.0, 2.0, 3.0, 4.0])
    assert r_squared(y, y) == 1.0
    assert r_squared(y, np.full(4, 2.5)) == 0.0
    with pytest.raises(UndefinedVarianceError):
        r_squared(np.ones(3), np.ones(3))


def test_linear_exact():
    m = TrendModel.linear(50, 0.25)
    f = fit_linear(series_of(m, 100))
    assert f.model.level == pytest.approx(50)
    assert f.model.slope == pytest.approx(0.25)
    assert f.r_squared == pytest.approx(1.0, abs=1e-12)


def test_constant_series_is_degenerate_not_an_error():
    f = fit_linear(PriceSeries.from_values(np.full(50, 7.0)))
    assert f.degenerate and f.r_squared == 1.0 and f.model.slope == 0


def test_parabola_recovered():
    m = TrendModel.from_quadratic(10564, 21.7763, -0.0405)
    f = fit_parabola(series_of(m, 500))
    assert f.model.accel == pytest.approx(-0.081, abs=1e-9)
    assert f.model.slope == pytest.approx(21.7763, abs=1e-6)


def test_segment_sets_origin():
    m = TrendModel.from_quadratic(100, 1, 0.01)
    s = series_of(m, 300)
    f = fit_parabola(s, (100, 199))
    assert f.model.origin == 100
    assert f.model.at(150) == pytest.approx(m.at(150))


def test_exponential_matches_log_polyfit(rng):
    x = 50 * np.exp(0.002 * np.arange(400)) * np.exp(0.01 * rng.standard_normal(400))
    f = fit_exponential(PriceSeries.from_values(x))
    slope, intercept = np.polyfit(np.arange(400.0), np.log(x), 1)
    assert f.model.rate == pytest.approx(slope, rel=1e-10)
    assert f.model.level == pytest.approx(math.exp(intercept), rel=1e-10)
    # R^2 is judged on prices, not logs
    pred = f.model.at(np.arange(400))
    ss = np.sum((x - pred) ** 2) / np.sum((x - x.mean()) ** 2)
    assert f.r_squared == pytest.approx(1 - ss, rel=1e-12)


def test_slow_sinusoid_clean():
    m = TrendModel.cyclic(875, 0, 125, 2 * math.pi / 750, -math.pi / 2)
    f = fit_sinusoid(series_of(m, 1500))
    assert f.model.base == pytest.approx(875, abs=1)
    assert f.model.amplitude == pytest.approx(125, abs=1)
    assert f.model.period == pytest.approx(750, abs=1)
    assert f.model.phase == pytest.approx(-math.pi / 2, abs=1e-3)
    assert f.r_squared > 0.999


def test_drifting_sinusoid_clean():
    m = TrendModel.cyclic(10500, -2.5, 300, 2 * math.pi / 53, -math.pi / 2)
    f = fit_sinusoid(series_of(m, 265), period_grid=np.arange(40, 71))
    assert f.model.drift == pytest.approx(-2.5, abs=0.1)
    assert f.model.amplitude == pytest.approx(300, abs=5)
    assert f.model.period == pytest.approx(53, abs=1)


def test_sinusoid_noise_law():
    # R^2 -> V/(V+s^2) with V = amp^2/2 for a pure sinusoid plus white noise
    m = TrendModel.cyclic(875, 0, 125, 2 * math.pi / 750, -math.pi / 2)
    clean = evaluate(m, np.arange(1500.0))
    grid = np.arange(700, 801)
    scores = []
    for seed in range(40):
        y = clean + 30 * np.random.default_rng(seed).standard_normal(1500)
        scores.append(fit_sinusoid(PriceSeries.from_values(y), period_grid=grid).r_squared)
    expect = 7812.5 / (7812.5 + 900)
    assert abs(np.mean(scores) - expect) < 0.01


def test_sinusoid_grid_validation():
    s = series_of(TrendModel.linear(10, 0.1), 50)
    with pytest.raises(ConfigError):
        fit_sinusoid(s, period_grid=[])
    with pytest.raises(ConfigError):
        fit_sinusoid(s, period_grid=[2.0])
    with pytest.raises(ConfigError):
        fit_sinusoid(s, period_grid=[101.0])


def test_sinusoid_on_a_line_is_flagged_degenerate():
    f = fit_sinusoid(series_of(TrendModel.linear(10, 0.1), 60), period_grid=[30.0])
    assert f.degenerate


def test_fit_family_dispatch():
    s = series_of(TrendModel.linear(10, 0.1), 60)
    assert fit_family(s, "line").family is Family.LINEAR
    assert fit_family(s, "sinusoid", period_grid=[20.0]).family is Family.CYCLIC


def test_exponential_two_points():
    m = exponential_line_through_two_points((946, 41.22), (3390, 92.92))
    assert m.rate == pytest.approx(0.0003325758316038852, rel=1e-12)
    assert m.at(946) == pytest.approx(41.22, rel=1e-12)
    assert m.at(3390) == pytest.approx(92.92, rel=1e-12)
    with pytest.raises(DomainError):
        exponential_line_through_two_points((0, 1.0), (1, -1.0))
    with pytest.raises(DegenerateInputError):
        exponential_line_through_two_points((3, 1.0), (3, 2.0))


def test_linear_two_points():
    m = linear_line_through_two_points((2, 10.0), (6, 18.0))
    assert m.slope == 2.0 and m.at(2) == 10.0 and m.at(6) == 18.0


def test_q6_three_point_parabola():
    # coefficients from exact rational Lagrange interpolation
    m = parabola_through_three_points((0, 10380.43), (9, 10068.01), (13, 9974.45))
    assert m.level == pytest.approx(10380.43, rel=1e-12)
    assert m.slope == pytest.approx(-42.552564102564105, rel=1e-9)
    assert m.accel == pytest.approx(1.7420512820512821, rel=1e-9)
    assert m.accel > 0


def test_parabola_degenerate():
    with pytest.raises(DegenerateInputError):
        parabola_through_three_points((0, 1), (0, 2), (3, 4))


coord = st.integers(min_value=0, max_value=5000)
price = st.floats(min_value=1.0, max_value=1e5, allow_nan=False)


@settings(max_examples=300, deadline=None)
@given(st.lists(coord, min_size=3, max_size=3, unique=True),
       st.lists(price, min_size=3, max_size=3))
def test_parabola_passes_through_points(ts, ys):
    ts = sorted(ts)
    # keep the Vandermonde system reasonably conditioned
    assume(min(b - a for a, b in zip(ts, ts[1:])) >= 1)
    m = parabola_through_three_points(*zip(ts, ys))
    for t, y in zip(ts, ys):
        assert abs(m.at(t) - y) <= 1e-9 * max(abs(y), 1.0) * max(1.0, (ts[-1] - ts[0]) / 100) ** 2
