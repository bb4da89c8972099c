import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import gamma as sgamma
from scipy.special import psi as spsi

from logconf.constants import (
    EULER_GAMMA,
    FORMULAS,
    ball_volume,
    beckner_constant,
    chen_zhou_constant,
    frac_constants,
    frac_kernel_constant,
    frac_zeroth_order,
    frank_consistency,
    kappa_constant,
    kernel_constant,
    log_constants,
    pitt_constant,
    q_curvature,
    rho_constant,
    sphere_area,
)

DIMS = range(1, 11)


def test_low_dimensional_values():
    assert_allclose(kernel_constant(1), 1.0, rtol=1e-14)
    assert_allclose(q_curvature(2), -2 * EULER_GAMMA, rtol=1e-14)
    assert q_curvature(1) < 0 and q_curvature(2) < 0
    assert all(q_curvature(N) > 0 for N in range(3, 11))


@pytest.mark.parametrize("N", DIMS)
def test_against_scipy(N):
    assert_allclose(sphere_area(N), 2 * np.pi ** ((N + 1) / 2) / sgamma((N + 1) / 2), rtol=1e-13)
    assert_allclose(ball_volume(N), np.pi ** (N / 2) / sgamma(N / 2 + 1), rtol=1e-13)
    assert_allclose(kernel_constant(N), np.pi ** (-N / 2) * sgamma(N / 2), rtol=1e-13)
    assert_allclose(q_curvature(N), 2 * spsi(N / 2), rtol=1e-13, atol=1e-14)
    assert_allclose(pitt_constant(N), 2 * spsi(N / 4) + 2 * np.log(2), rtol=1e-13, atol=1e-14)


@pytest.mark.parametrize("N", DIMS)
def test_frank_consistency(N):
    assert abs(frank_consistency(N) - 4.0) <= 1e-13


@pytest.mark.parametrize("N", DIMS)
def test_area_volume_relation(N):
    # |S^{N-1}| = N |B_1| in R^N
    assert_allclose(sphere_area(N - 1) if N > 1 else 2.0, N * ball_volume(N), rtol=1e-13)


@pytest.mark.parametrize("N", DIMS)
def test_chen_zhou_is_exp_of_q_curvature(N):
    assert_allclose(chen_zhou_constant(N), math.exp(N * q_curvature(N) / 4), rtol=1e-13)
    assert abs(math.log(chen_zhou_constant(N)) - 0.5 * N * spsi(N / 2)) <= 1e-13


@pytest.mark.parametrize("N", DIMS)
def test_rho_and_kappa(N):
    assert_allclose(rho_constant(N), 2 * math.log(2) + spsi(N / 2) + spsi(1), rtol=1e-13, atol=1e-14)
    assert kappa_constant(N) >= 1.0
    assert kappa_constant(N) + pitt_constant(N) > 0


def test_frac_n1_quarter():
    assert_allclose(frac_zeroth_order(1, 0.25), sgamma(0.75) / sgamma(0.25), rtol=1e-13)


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_frac_limit(N):
    s = np.array([1e-3, 5e-4, 2.5e-4])
    q = np.array([(frac_zeroth_order(N, t) - 1) / t for t in s])
    # first-order Richardson extrapolation
    extrap = 2 * q[1:] - q[:-1]
    assert_allclose(extrap, q_curvature(N), rtol=1e-5)


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("s", [0.05, 0.2, 0.45])
def test_frac_positive(N, s):
    c, a = frac_constants(N, s)
    assert c > 0 and a > 0
    assert c == frac_kernel_constant(N, s)


def test_frac_zeroth_order_sign_change_n1():
    assert frac_zeroth_order(1, 0.75) < 0


@pytest.mark.parametrize("bad", [0, -1, 1.5, True, "2"])
def test_bad_dimension(bad):
    with pytest.raises(ValueError):
        q_curvature(bad)


@pytest.mark.parametrize("s", [0.0, 1.0, -0.1])
def test_bad_order(s):
    with pytest.raises(ValueError):
        frac_constants(2, s)


def test_log_constants_bundle():
    c = log_constants(3)
    d = c.as_dict()
    assert d["dim"] == 3
    assert_allclose(d["beckner"], beckner_constant(3))
    assert set(d) - {"dim"} <= set(FORMULAS)
