import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate

from logconf.constants import ball_volume, sphere_area
from logconf.geometry import PlaneField, make_rng, random_sphere_points
from logconf.harmonics import zonal_harmonic
from logconf.quadrature import (
    QuadratureError,
    ToleranceConfig,
    composite_gauss,
    cross_section_rule,
    geometric_breaks,
    graded_breaks,
    integrate_ball_diff,
    integrate_sphere,
    integrate_tail,
    plane_rule,
    point_rule,
    refine,
    sphere_rule,
)

DIMS = [1, 2, 3]


def _radial(func, N, **kw):
    return PlaneField(lambda x: func(np.sum(x * x, axis=-1)), N, radial=True, **kw)


@pytest.mark.parametrize("N", DIMS)
@pytest.mark.parametrize("level", [0, 2])
def test_sphere_weights_sum_to_area(N, level):
    rule = sphere_rule(N, level)
    assert np.all(rule.weights > 0)
    assert abs(rule.weights.sum() - sphere_area(N)) <= 1e-10
    assert abs(integrate_sphere(lambda z: np.ones(z.shape[:-1]), N, rule=rule) - sphere_area(N)) <= 1e-10


def test_sphere_area_values():
    assert_allclose(sphere_area(2), 4 * np.pi, rtol=1e-14)
    assert_allclose(sphere_area(1), 2 * np.pi, rtol=1e-14)
    assert_allclose(ball_volume(3), 4 * np.pi / 3, rtol=1e-14)


@pytest.mark.parametrize("N", DIMS)
def test_odd_integrand_vanishes(N):
    est = integrate_sphere(lambda z: z[..., -1], N)
    assert abs(est.value) <= 1e-12


@pytest.mark.parametrize("N", DIMS)
def test_harmonics_are_orthogonal(N):
    y2, y3 = zonal_harmonic(N, 2), zonal_harmonic(N, 3)
    pole = random_sphere_points(N, 1, make_rng(0))[0]
    assert abs(integrate_sphere(lambda z: y2(z) * y3(z), N, pole=pole).value) <= 1e-10


@pytest.mark.parametrize("N", DIMS)
def test_second_moment(N):
    # int z_1^2 = |S^N| / (N + 1)
    est = integrate_sphere(lambda z: z[..., 0] ** 2, N)
    assert_allclose(est.value, sphere_area(N) / (N + 1), rtol=1e-12)


def test_collapsed_rule_exact_for_zonal():
    N = 3
    f = lambda z: np.exp(z[..., -1])
    full = integrate_sphere(f, N).value
    fast = integrate_sphere(f, N, zonal=True).value
    assert_allclose(fast, full, rtol=1e-12)


@pytest.mark.parametrize("k, res", [(0, 4), (1, 16), (2, 16)])
def test_cross_sections(k, res):
    pts, w = cross_section_rule(k, res)
    assert_allclose(np.linalg.norm(pts, axis=1), 1.0)
    assert_allclose(w.sum(), sphere_area(k) if k else 2.0, rtol=1e-13)


def test_cross_section_unsupported():
    with pytest.raises(ValueError):
        cross_section_rule(3, 8)


def test_composite_gauss_polynomial():
    x, w = composite_gauss(np.linspace(0, 2, 5), 6)
    assert_allclose(np.dot(w, x**7), 2**8 / 8, rtol=1e-14)


def test_graded_breaks():
    b = graded_breaks(0.0, 1.0, foci=(0.3,), h_min=1e-3, h_max=0.25)
    assert b[0] == 0.0 and b[-1] == 1.0
    assert np.all(np.diff(b) > 0)
    assert np.all(np.diff(b) <= 0.25 + 1e-15)
    assert np.min(np.abs(b - 0.3)) == 0.0
    g = geometric_breaks(0.0, 1.0, 5)
    d = np.diff(g)
    assert_allclose(d[2:] / d[1:-1], 2.0)


@pytest.mark.parametrize("N", DIMS)
def test_ball_diff_constant(N):
    v = _radial(lambda r2: 3.0 + 0 * r2, N)
    rule = plane_rule(N, 0)
    assert abs(integrate_ball_diff(v, np.zeros(N), rule)) <= 1e-12


@pytest.mark.parametrize("N", DIMS)
def test_ball_diff_linear(N):
    v = PlaneField(lambda x: x[..., 0], N)
    assert abs(integrate_ball_diff(v, np.zeros(N), plane_rule(N, 0))) <= 1e-13


@pytest.mark.parametrize("N", DIMS)
def test_ball_diff_quadratic(N):
    v = _radial(lambda r2: r2, N)
    expected = -(sphere_area(N - 1) if N > 1 else 2.0) / 2
    assert_allclose(integrate_ball_diff(v, np.zeros(N), point_rule(v, np.zeros(N), 0)), expected, rtol=1e-12)


@pytest.mark.parametrize("N", DIMS)
def test_tail_zero_and_compact_support(N):
    zero = _radial(lambda r2: 0 * r2, N)
    assert integrate_tail(zero, np.zeros(N), plane_rule(N, 0)) == 0.0
    bump = _radial(lambda r2: np.where(r2 < 0.81, np.exp(-1 / np.maximum(0.81 - r2, 1e-300)), 0.0), N)
    assert integrate_tail(bump, np.zeros(N), plane_rule(N, 0)) == 0.0


def test_tail_against_scipy_n1():
    v = _radial(lambda r2: (1 + r2) ** -1.0, 1, decay=2.0)
    ref, _ = integrate.quad(lambda y: 2 / (y * (1 + y * y)), 1, np.inf, epsabs=1e-13)
    assert_allclose(ref, math.log(2), rtol=1e-12)
    val = integrate_tail(v, np.zeros(1), point_rule(v, np.zeros(1), 1))
    assert abs(val - ref) <= 1e-9


def test_tail_off_centre_against_scipy_n1():
    v = _radial(lambda r2: np.exp(-r2), 1)
    x = 0.7
    f = lambda y: np.exp(-y * y) / abs(x - y)
    ref = integrate.quad(f, -np.inf, x - 1, epsabs=1e-13)[0] + integrate.quad(f, x + 1, np.inf, epsabs=1e-13)[0]
    val = integrate_tail(v, np.array([x]), point_rule(v, np.array([x]), 1))
    assert abs(val - ref) <= 1e-9


def test_refine_converges():
    est = refine(lambda lv: 1.0 + 2.0 ** (-10 * lv), ToleranceConfig(1e-8))
    assert est.level >= 1
    assert abs(est.value - 1.0) <= 1e-8


def test_refine_failure():
    with pytest.raises(QuadratureError):
        refine(lambda lv: float(lv), ToleranceConfig(1e-8, max_refinement_level=3))


def test_tolerance_config():
    with pytest.raises(ValueError):
        ToleranceConfig(0.0)
    tol = ToleranceConfig(1e-8, target_rel_tol=1e-3)
    assert tol.accepts(np.array([1e-4]), np.array([1.0]))
    assert not tol.accepts(np.array([1e-2]), np.array([1.0]))


@pytest.mark.parametrize("N", [2, 3])
def test_refinement_is_stable(N):
    # a level up changes a smooth sphere integral by less than the tolerance
    f = lambda z: np.exp(z[..., 0] + 0.5 * z[..., -1])
    a = integrate_sphere(f, N, rule=sphere_rule(N, 1))
    b = integrate_sphere(f, N, rule=sphere_rule(N, 2))
    assert abs(a - b) <= 1e-10
