import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from logconf.specfun import DomainError, digamma, gamma, gamma_ratio, log_gamma, rgamma, trigamma

from oracle_values import DIGAMMA, DIGAMMA_GRID, LOG_GAMMA, LOG_GAMMA_GRID, TRIGAMMA

EULER = 0.57721566490153286060651209008240243


def _pairs(table):
    return [(float(k), float(v)) for k, v in table.items()]


@pytest.mark.parametrize("x, ref", _pairs(DIGAMMA) + _pairs(DIGAMMA_GRID))
def test_digamma_oracle(x, ref):
    assert abs(digamma(x) - ref) <= 1e-12


@pytest.mark.parametrize("x, ref", _pairs(TRIGAMMA))
def test_trigamma_oracle(x, ref):
    assert abs(trigamma(x) - ref) <= 1e-10


@pytest.mark.parametrize("x, ref", _pairs(LOG_GAMMA) + _pairs(LOG_GAMMA_GRID))
def test_log_gamma_oracle(x, ref):
    # absolute below one, relative above (ulp of ln Gamma(1000) is ~1e-12)
    assert abs(log_gamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))


def test_closed_forms():
    assert log_gamma(1.0) == 0.0
    assert abs(log_gamma(2.0)) <= 1e-15
    assert_allclose(log_gamma(0.5), 0.5 * math.log(math.pi), rtol=0, atol=1e-14)
    assert_allclose(digamma(1.0), -EULER, rtol=0, atol=1e-15)
    assert_allclose(digamma(2.0), 1.0 - EULER, rtol=0, atol=1e-15)
    assert_allclose(digamma(0.5), -EULER - 2 * math.log(2.0), rtol=0, atol=1e-14)
    assert_allclose(trigamma(1.0), math.pi**2 / 6, rtol=1e-14)
    assert_allclose(trigamma(2.0), math.pi**2 / 6 - 1, rtol=1e-14)


GRID = np.logspace(-3, 3, 61)


def test_digamma_recurrence():
    assert np.max(np.abs(digamma(GRID + 1) - digamma(GRID) - 1 / GRID)) <= 1e-12


def test_trigamma_recurrence():
    x = GRID[GRID >= 0.1]
    assert_allclose(trigamma(x + 1), trigamma(x) - 1 / x**2, rtol=1e-12, atol=1e-12)


def test_log_gamma_recurrence():
    x = GRID[GRID <= 150]
    assert_allclose(np.exp(log_gamma(x + 1)), x * np.exp(log_gamma(x)), rtol=1e-12)


def test_digamma_lower_bound():
    assert np.all(digamma(GRID) > np.log(GRID) - 1 / GRID)


def test_trigamma_positive():
    assert np.all(trigamma(GRID) > 0)


@pytest.mark.parametrize("n", range(1, 12))
def test_gamma_factorial(n):
    assert_allclose(gamma(float(n)), math.factorial(n - 1), rtol=1e-14)


def test_gamma_matches_math():
    x = np.linspace(0.05, 20, 50)
    assert_allclose(gamma(x), [math.gamma(t) for t in x], rtol=1e-13)


def test_rgamma_at_poles():
    assert_allclose(rgamma(np.array([0.0, -1.0, -2.0])), 0.0, atol=0)
    assert_allclose(rgamma(3.0), 0.5, rtol=1e-15)


def test_gamma_ratio():
    assert_allclose(gamma_ratio(5.5, 2.5), math.gamma(5.5) / math.gamma(2.5), rtol=1e-13)


def test_vectorised_shapes():
    x = np.array([[0.5, 1.0], [2.0, 3.5]])
    assert digamma(x).shape == (2, 2)
    assert isinstance(digamma(1.0), float)


@pytest.mark.parametrize("func", [log_gamma, digamma, trigamma])
@pytest.mark.parametrize("bad", [0.0, -1.5, float("nan")])
def test_domain_errors(func, bad):
    with pytest.raises(DomainError):
        func(bad)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1e3))
def test_digamma_is_log_gamma_derivative(x):
    h = 1e-4 * x
    fd = (log_gamma(x + h) - log_gamma(x - h)) / (2 * h)
    assert abs(digamma(x) - fd) <= 1e-6 * max(1.0, abs(fd))


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1e-2, max_value=1e2))
def test_duplication_formula(x):
    lhs = log_gamma(2 * x)
    rhs = log_gamma(x) + log_gamma(x + 0.5) + (2 * x - 1) * math.log(2) - 0.5 * math.log(math.pi)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))
