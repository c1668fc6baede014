import numpy as np
import pytest

from mrtrend import PriceSeries


def two_regime(seed, n1=1000, n2=1000, rate=0.0005, period=160.0, swing=0.15, noise=0.01):
    """Exponential growth, then a horizontal channel; multiplicative noise."""
    rng = np.random.default_rng(seed)
    a = 100.0 * np.exp(rate * np.arange(n1))
    lvl = 100.0 * np.exp(rate * n1)
    b = lvl - swing * lvl * np.sin(2 * np.pi * np.arange(n2) / period)
    x = np.concatenate([a, b]) * (1.0 + noise * rng.standard_normal(n1 + n2))
    return PriceSeries.from_values(x)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# (criterion, verdict, detail) lines recorded by test_acceptance.py
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"{verdict:4s} {name}: {detail}")
