import math

import numpy as np
import pytest

from mrtrend import (Family, TrendModel, acceleration_series, analytic_acceleration,
                     analytic_speed, classify_signature, evaluate)

SLOW_CYCLE = TrendModel.cyclic(875, 0, 125, 2 * math.pi / 750, -math.pi / 2)
DRIFT_CYCLE = TrendModel.cyclic(10500, -2.5, 300, 2 * math.pi / 53, -math.pi / 2)
TOP_PARABOLA = TrendModel.from_quadratic(10564, 21.7763, -0.0405)


def test_family_parse_aliases():
    assert Family.parse("sinusoid") is Family.CYCLIC
    assert Family.parse("Parabola") is Family.PARABOLIC
    assert [f.n_params for f in Family] == [2, 3, 2, 5]
    with pytest.raises(ValueError):
        Family.parse("cubic")


def test_invariants():
    with pytest.raises(ValueError):
        TrendModel.exponential(-1, 0.1)
    with pytest.raises(ValueError):
        TrendModel.cyclic(0, 0, -1, 1, 0)
    with pytest.raises(ValueError):
        TrendModel.cyclic(0, 0, 1, 0, 0)


def test_evaluate_examples():
    assert evaluate(SLOW_CYCLE, 0) == pytest.approx(750.0, abs=1e-9)
    assert evaluate(SLOW_CYCLE, 375) == pytest.approx(1000.0, abs=1e-9)
    assert evaluate(TrendModel.linear(5, 2), 3) == 11
    assert evaluate(TOP_PARABOLA, 0) == 10564


def test_speed_examples():
    assert analytic_speed(TOP_PARABOLA, 0) == pytest.approx(21.7763)
    assert analytic_speed(TrendModel.exponential(41.22, 0.000333), 0) == pytest.approx(0.01373, abs=5e-6)
    # drift plus the peak cosine slope at a zero crossing of the sine
    assert analytic_speed(DRIFT_CYCLE, 0) == pytest.approx(-2.5, abs=1e-9)
    assert analytic_speed(DRIFT_CYCLE, 53 / 4) == pytest.approx(-2.5 + 300 * 2 * math.pi / 53, rel=1e-12)


def test_acceleration_examples():
    assert analytic_acceleration(TOP_PARABOLA, 17) == pytest.approx(-0.081)
    assert analytic_acceleration(TrendModel.linear(1, 1), 4) == 0
    assert analytic_acceleration(SLOW_CYCLE, 375 / 2 + 0.0) == pytest.approx(0.0, abs=1e-9)


def test_reduces_to_plain_sine():
    m = TrendModel.cyclic(0, 0, 3, 0.2, 0.5)
    tau = np.linspace(0, 40, 101)
    np.testing.assert_allclose(evaluate(m, tau), 3 * np.sin(0.2 * tau + 0.5), rtol=0, atol=1e-14)


@pytest.mark.parametrize("model", [
    TrendModel.linear(10, 0.3, origin=5),
    TrendModel.from_quadratic(8796, 25.2343, -0.1145, origin=3),
    TrendModel.exponential(41.22, 0.000333, origin=946),
    DRIFT_CYCLE,
])
def test_shifted_is_the_same_curve(model):
    k = np.arange(0, 60)
    other = model.shifted(model.origin + 17)
    np.testing.assert_allclose(other.at(k), model.at(k), rtol=1e-12, atol=1e-9)


def _second_diff_at_centre(model, n=200):
    tau = np.arange(n, dtype=float)
    d2 = acceleration_series(evaluate(model, tau))
    return d2.values, analytic_acceleration(model, tau[1:-1])


@pytest.mark.parametrize("model", [TrendModel.linear(3, 1.5), TOP_PARABOLA,
                                   TrendModel.from_quadratic(8796, 25.2343, -0.1145)])
def test_discrete_consistency_polynomial(model):
    d2, an = _second_diff_at_centre(model)
    np.testing.assert_allclose(d2, an, atol=1e-9)


@pytest.mark.parametrize("model", [TrendModel.exponential(41.22, 0.000333),
                                   TrendModel.exponential(10, 0.02), SLOW_CYCLE, DRIFT_CYCLE])
def test_discrete_consistency_transcendental(model):
    d2, an = _second_diff_at_centre(model)
    w = max(model.rate, model.freq)
    scale = np.max(np.abs(an))
    assert np.max(np.abs(d2 - an)) <= w ** 2 * scale


def _classify(model, n=300):
    x = evaluate(model, np.arange(n, dtype=float))
    return classify_signature(acceleration_series(x), x)


def test_classify_signature():
    assert _classify(TrendModel.linear(100, 0.5)) == {Family.LINEAR}
    assert Family.PARABOLIC in _classify(TOP_PARABOLA)
    assert Family.EXPONENTIAL in _classify(TrendModel.exponential(100, 0.003))
    assert _classify(SLOW_CYCLE, 1500) == {Family.CYCLIC}
    assert Family.CYCLIC in _classify(DRIFT_CYCLE, 265)
