import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

from logconf.constants import sphere_area
from logconf.geometry import (
    PlaneField,
    PoleError,
    SphereField,
    chordal_distance,
    conformal_factor,
    iota_pull,
    iota_push,
    make_rng,
    north_pole,
    random_ball_points,
    random_sphere_points,
    rotate_to_pole,
    stereo,
    stereo_inv,
)
from logconf.forms import plane_weighted_l2, sphere_l2
from logconf.harmonics import zonal_harmonic

DIMS = [1, 2, 3]


def test_poles():
    assert_allclose(stereo(north_pole(2)), [0.0, 0.0])
    with pytest.raises(PoleError):
        stereo(-north_pole(2))


@pytest.mark.parametrize("N", DIMS)
def test_round_trip(N):
    rng = make_rng(1)
    x = rng.normal(size=(50, N)) * 3
    assert_allclose(stereo(stereo_inv(x)), x, rtol=1e-12, atol=1e-12)
    z = random_sphere_points(N, 50, rng)
    assert_allclose(stereo_inv(stereo(z)), z, atol=1e-12)


@pytest.mark.parametrize("N", DIMS)
def test_unit_norm(N):
    x = make_rng(2).normal(size=(40, N)) * 10
    assert_allclose(np.linalg.norm(stereo_inv(x), axis=-1), 1.0, rtol=1e-14)


@settings(max_examples=50, deadline=None)
@given(
    arrays(float, 2, elements=st.floats(-5, 5)),
    arrays(float, 2, elements=st.floats(-5, 5)),
)
def test_chordal_distance_is_conformal(x, y):
    # |s(x) - s(y)|^2 = phi(x) phi(y) |x - y|^2
    d = chordal_distance(stereo_inv(x), stereo_inv(y))
    assert_allclose(d**2, conformal_factor(x) * conformal_factor(y) * np.sum((x - y) ** 2), rtol=1e-10, atol=1e-14)


def test_conformal_factor_values():
    assert conformal_factor(np.zeros(3)) == 2.0
    assert_allclose(conformal_factor(np.array([1.0, 0.0])), 1.0)


@pytest.mark.parametrize("N", DIMS)
def test_rotate_to_pole(N):
    rng = make_rng(3)
    for z in random_sphere_points(N, 5, rng):
        R = rotate_to_pole(z)
        assert_allclose(R @ z, north_pole(N), atol=1e-14)
        assert_allclose(R @ R.T, np.eye(N + 1), atol=1e-14)
        assert_allclose(np.linalg.det(R), 1.0, atol=1e-13)


@pytest.mark.parametrize("N", DIMS)
def test_iota_round_trip(N):
    u = zonal_harmonic(N, 2) + 1.5
    v = iota_push(u)
    back = iota_pull(v)
    z = random_sphere_points(N, 30, make_rng(4))
    assert_allclose(back(z), u(z), rtol=1e-12, atol=1e-12)
    assert v.radial


@pytest.mark.parametrize("N", DIMS)
def test_iota_pull_south_pole_limit(N):
    v = PlaneField(lambda x: (1 + np.sum(x * x, axis=-1)) ** (-N / 2) * 3.0, N, decay=N, radial=True)
    u = iota_pull(v)
    # v = 3 * 2^(-N/2) phi^(N/2), so u is the constant 3 * 2^(-N/2)
    assert_allclose(u(-north_pole(N)), 3.0 * 2 ** (-N / 2), rtol=1e-9)


def test_iota_pull_slow_decay_raises():
    v = PlaneField(lambda x: np.ones(x.shape[:-1]), 2, decay=0.0)
    with pytest.raises(PoleError):
        iota_pull(v)(-north_pole(2))


@pytest.mark.parametrize("N", DIMS)
def test_iota_is_l2_isometry(N):
    u = zonal_harmonic(N, 1) + 2.0
    lhs = sphere_l2(u).value
    rhs = plane_weighted_l2(iota_push(u), iota_push(u)).value
    assert_allclose(lhs, rhs, rtol=1e-7)


def test_offset_bump_symmetry():
    v = PlaneField(lambda x: np.exp(-np.sum((x - 0.5) ** 2, axis=-1)), 2, center=[0.5, 0.5], radial=True)
    u = iota_pull(v)
    assert u.axes is not None and len(u.axes) == 2
    # points near, but not at, the south pole evaluate normally
    z = np.array([1e-6, 0.0, -np.sqrt(1 - 1e-12)])
    assert np.isfinite(u(z))


def test_field_arithmetic_symmetry():
    N = 2
    a = zonal_harmonic(N, 1)
    b = zonal_harmonic(N, 2)
    assert (a + b).zonal
    c = zonal_harmonic(N, 1, pole=np.array([1.0, 0.0, 0.0]))
    assert not (a + c).zonal
    assert (a * 2.0).axes == a.axes
    z = random_sphere_points(N, 10, make_rng(5))
    assert_allclose((a - b)(z), a(z) - b(z))
    assert_allclose((-a)(z), -a(z))


def test_field_shape_checks():
    u = zonal_harmonic(2, 1)
    with pytest.raises(ValueError):
        u(np.zeros(2))
    v = PlaneField(lambda x: x[..., 0], 2)
    with pytest.raises(ValueError):
        v(np.zeros(3))
    with pytest.raises(ValueError):
        u + zonal_harmonic(3, 1)


def test_constant_broadcast():
    u = SphereField(lambda z: 2.0, 1, axes=())
    assert u(np.zeros((4, 2))).shape == (4,)


@pytest.mark.parametrize("N", DIMS)
def test_random_points(N):
    rng = make_rng(7)
    z = random_sphere_points(N, 100, rng)
    assert_allclose(np.linalg.norm(z, axis=1), 1.0)
    x = random_ball_points(N, 100, 3.0, rng)
    assert np.all(np.linalg.norm(x, axis=1) <= 3.0)


def test_rng_deterministic():
    assert_allclose(make_rng(11).random(5), make_rng(11).random(5), rtol=0)


@pytest.mark.parametrize("N", DIMS)
def test_jacobian_is_phi_to_the_n(N):
    # iota(1)^2 = phi^N is the Jacobian of stereo_inv, so it integrates to |S^N|
    v = iota_push(zonal_harmonic(N, 0))
    assert_allclose(plane_weighted_l2(v, v).value, sphere_area(N), rtol=1e-8)
