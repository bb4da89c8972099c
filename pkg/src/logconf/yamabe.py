"""Explicit solutions of the logarithmic Yamabe equations and their residuals.

On the sphere the equation is ``P u = (4/N) u ln|u| + mu u`` and in the
plane ``L v = (4/N) v ln|v| + mu v``. Both are checked pointwise on the
closed-form solution families.
"""

import math
from dataclasses import replace

import numpy as np

from .constants import _check_dim, chen_zhou_constant, q_curvature
from .geometry import PlaneField, SphereField, conformal_factor, iota_push, stereo_inv
from .operators import _settings, log_laplacian_point, p_log_sphere
from .reports import ResidualReport

# Points where the field is smaller than this are dropped from residuals.
ZERO_GUARD = 1e-8


def bubble_field(N, t=1.0, center=None, mu=None):
    """``exp((N/4)(A_N - mu)) (2t / (t^2 + |x - a|^2))^(N/2)``.

    ``mu`` defaults to ``A_N``, where the prefactor is 1 and ``t = 1``,
    ``a = 0`` gives ``phi^(N/2)``.
    """
    N = _check_dim(N)
    t = float(t)
    if t <= 0:
        raise ValueError("bubble scale must be positive")
    a = np.zeros(N) if center is None else np.asarray(center, dtype=float)
    AN = q_curvature(N)
    mu = AN if mu is None else float(mu)
    amp = math.exp(0.25 * N * (AN - mu))
    half = N / 2.0

    def func(x):
        d = x - a
        return amp * (2.0 * t / (t * t + np.sum(d * d, axis=-1))) ** half

    return PlaneField(func, N, decay=float(N), center=a, radial=True, scale=t, name=f"bubble(t={t:g})")


def chen_zhou_field(N):
    """``gamma_N phi^(N/2)``, the ``mu = 0`` member of the bubble family."""
    return replace(bubble_field(N, mu=0.0), name="chen-zhou")


def frank_field(theta, N=None):
    """``u_theta(z) = (sqrt(1 - |theta|^2) / (1 - theta . z))^(N/2)`` for ``|theta| < 1``."""
    theta = np.asarray(theta, dtype=float)
    N = theta.size - 1 if N is None else _check_dim(N)
    if theta.shape != (N + 1,):
        raise ValueError(f"theta must have {N + 1} components")
    norm = float(np.linalg.norm(theta))
    if norm >= 1.0:
        raise ValueError("theta must lie in the open unit ball")
    c = math.sqrt(1.0 - norm * norm)
    half = N / 2.0

    def func(z):
        return (c / (1.0 - z @ theta)) ** half

    if norm == 0.0:
        return SphereField(func, N, axes=(), name="frank(0)")
    axis = theta / norm
    return SphereField(func, N, axes=(axis,), focus=axis, name=f"frank(|theta|={norm:g})")


def frank_from_bubble(t, center):
    """Parameter ``theta`` with ``iota(u_theta)`` equal to the bubble ``(t, a)`` at ``mu = A_N``.

    With ``D = t^2 + |a|^2`` this is ``(2a, 1 - D) / (1 + D)``; the sign of
    the last component reflects projection from the south pole.
    """
    a = np.asarray(center, dtype=float)
    D = float(t) ** 2 + float(a @ a)
    return np.concatenate([2.0 * a / (D + 1.0), [(1.0 - D) / (D + 1.0)]])


def bubble_from_frank(theta):
    """Inverse of :func:`frank_from_bubble`, returning ``(t, a)``."""
    theta = np.asarray(theta, dtype=float)
    denom = 1.0 + theta[-1]
    return math.sqrt(1.0 - float(theta @ theta)) / denom, theta[:-1] / denom


def constant_solution(N, mu):
    """The constant solving the sphere equation, ``exp((N/4)(A_N - mu))``."""
    N = _check_dim(N)
    return math.exp(0.25 * N * (q_curvature(N) - mu))


def constant_field(N, mu):
    c = constant_solution(N, mu)
    return SphereField(lambda z: np.full(z.shape[:-1], c), N, axes=(), name=f"const({c:.6g})")


def scaling_factor(N, mu):
    """``K = exp(N mu / 4)``: ``K v`` solves the ``mu = 0`` equation when ``v`` solves it for ``mu``."""
    return math.exp(0.25 * N * mu)


def _nonlinearity(values, N, mu):
    return 4.0 / N * values * np.log(np.abs(values)) + mu * values


def _guard(values):
    return np.abs(values) >= ZERO_GUARD


def sphere_residual_values(u, mu, points, tol=None):
    """``P u - (4/N) u ln|u| - mu u`` at ``points`` (NaN where ``|u|`` is tiny)."""
    pts = np.atleast_2d(points)
    vals = u(pts)
    keep = _guard(vals)
    out = np.full(len(pts), np.nan)
    if np.any(keep):
        pu = np.atleast_1d(p_log_sphere(u, pts[keep], tol).value)
        out[keep] = pu - _nonlinearity(vals[keep], u.dim, mu)
    return out


def plane_residual_values(v, mu, points, tol=None):
    """``L v - (4/N) v ln|v| - mu v`` at ``points`` (NaN where ``|v|`` is tiny)."""
    pts = np.atleast_2d(points)
    vals = v(pts)
    keep = _guard(vals)
    out = np.full(len(pts), np.nan)
    if np.any(keep):
        lv = np.atleast_1d(log_laplacian_point(v, pts[keep], tol).value)
        out[keep] = lv - _nonlinearity(vals[keep], v.dim, mu)
    return out


def _report(name, pts, res, tolerance, tol, **extra):
    keep = np.isfinite(res)
    return ResidualReport(
        name,
        pts[keep],
        res[keep],
        tolerance,
        settings=_settings(tol, zero_guard=ZERO_GUARD),
        extra=dict(extra, excluded=int(np.sum(~keep))),
    )


def residual_y1(u, mu, points, tol=None, tolerance=1e-5):
    """Pointwise residual of the sphere equation."""
    pts = np.atleast_2d(points)
    res = sphere_residual_values(u, mu, pts, tol)
    return _report(f"Y1 {u.name} mu={mu:.6g}", pts, res, tolerance, tol, mu=mu)


def residual_y2(v, mu, points, tol=None, tolerance=1e-5):
    """Pointwise residual of the flat equation."""
    pts = np.atleast_2d(points)
    res = plane_residual_values(v, mu, pts, tol)
    return _report(f"Y2 {v.name} mu={mu:.6g}", pts, res, tolerance, tol, mu=mu)


def equivalence_check(u, mu, points, tol=None, tolerance=1e-5):
    """Compare the transferred sphere residual with the flat residual of ``iota(u)``.

    At plane points ``x`` the residuals satisfy
    ``phi(x)^(N/2) r_sphere(stereo_inv x) = r_plane(x)`` for every smooth
    positive ``u``, solution or not. ``extra`` holds the largest residual
    of each route.
    """
    pts = np.atleast_2d(points)
    N = u.dim
    v = iota_push(u)
    r1 = conformal_factor(pts) ** (N / 2.0) * sphere_residual_values(u, mu, stereo_inv(pts), tol)
    r2 = plane_residual_values(v, mu, pts, tol)
    diff = r1 - r2
    keep = np.isfinite(diff)
    return _report(
        f"Y1/Y2 equivalence {u.name}",
        pts,
        diff,
        tolerance,
        tol,
        mu=mu,
        sphere_max=float(np.max(np.abs(r1[keep]), initial=0.0)),
        plane_max=float(np.max(np.abs(r2[keep]), initial=0.0)),
    )


def chen_zhou_check(N, points, tol=None, tolerance=1e-5):
    """``gamma_N phi^(N/2)`` solves the flat equation with ``mu = 0``."""
    rep = residual_y2(chen_zhou_field(N), 0.0, points, tol, tolerance)
    rep.extra["gamma_N"] = chen_zhou_constant(N)
    return rep


def scaling_check(v, mu, points, tol=None, tolerance=1e-5):
    """``K v`` with ``K = exp(N mu / 4)`` solves the ``mu = 0`` equation if ``v`` solves it for ``mu``."""
    K = scaling_factor(v.dim, mu)
    rep = residual_y2(v * K, 0.0, points, tol, tolerance)
    rep.name = f"scaling {v.name} mu={mu:.6g}"
    rep.extra["K"] = K
    return rep
