"""Pointwise evaluation of the conformal operators on the sphere and of the flat log Laplacian.

The sphere operators are singular integrals over ``S^N`` computed in polar
coordinates about the evaluation point. The flat operator is split into a
unit-ball difference integral and an exterior tail integral.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import (
    frac_kernel_constant,
    frac_zeroth_order,
    kernel_constant,
    q_curvature,
    rho_constant,
)
from .geometry import PlaneField, SphereField, conformal_factor, iota_push, rotate_to_pole, stereo_inv
from .harmonics import laplace_eigenvalue, phi_log_symbol, phi_s_symbol, zonal_harmonic
from .quadrature import (
    DEFAULT_TOLERANCE,
    integrate_ball_diff,
    integrate_tail,
    point_rule,
    refine,
    sphere_rule,
)
from .reports import ResidualReport
from .specfun import digamma

_BATCH_NODES = 2_000_000
MAX_FRACTIONAL_ORDER = 0.25


@dataclass(frozen=True)
class OperatorSample:
    """Operator value(s) at point(s) with the quadrature error estimate."""

    point: np.ndarray
    value: object
    error_estimate: object
    level: int


def _as_points(z, width):
    z = np.asarray(z, dtype=float)
    single = z.ndim == 1
    z = np.atleast_2d(z)
    if z.shape[-1] != width:
        raise ValueError(f"points must have {width} coordinates, got shape {z.shape}")
    return z, single


def _squeeze(arr, single):
    return float(arr[0]) if single else arr


def _sphere_singular(u, z, rule, power):
    """``sum_j w_j (u(z) - u(zeta_j)) / |z - zeta_j|^power`` for each row of ``z``."""
    kernel = rule.weights / (2.0 * np.sin(0.5 * rule.polar)) ** power
    out = np.empty(len(z))
    uz = u(z)
    step = max(1, _BATCH_NODES // len(kernel))
    for s in range(0, len(z), step):
        block = z[s : s + step]
        rots = np.stack([rotate_to_pole(p) for p in block])
        pts = np.einsum("jm,kmn->kjn", rule.points, rots)
        out[s : s + step] = (uz[s : s + step, None] - u(pts)) @ kernel
    return out


def p_log_sphere(u: SphereField, z, tol=None, rule=None):
    """Conformal logarithmic Laplacian of ``u`` at sphere point(s) ``z``.

    Computes ``c_N int (u(z) - u(zeta)) / |z - zeta|^N dV(zeta) + A_N u(z)``.

    Parameters
    ----------
    u : SphereField
        Lipschitz field on ``S^N``.
    z : array_like, shape (N+1,) or (K, N+1)
        Evaluation point(s).
    tol : ToleranceConfig, optional
        Adaptive stopping rule, ignored when ``rule`` is given.
    rule : PolarRule, optional
        Fixed rule, for example to test linearity without refinement.

    Returns
    -------
    OperatorSample
    """
    N = u.dim
    pts, single = _as_points(z, N + 1)
    cN, AN = kernel_constant(N), q_curvature(N)

    def at(r):
        return cN * _sphere_singular(u, pts, r, N) + AN * u(pts)

    if rule is not None:
        val = at(rule)
        return OperatorSample(np.asarray(z), _squeeze(val, single), 0.0 if single else np.zeros(len(pts)), -1)
    est = refine(lambda lv: at(sphere_rule(N, lv)), tol)
    val, err = np.atleast_1d(est.value), np.atleast_1d(est.error)
    return OperatorSample(np.asarray(z), _squeeze(val, single), _squeeze(err, single), est.level)


def p_s_sphere(u: SphereField, z, s, tol=None):
    """Conformal fractional Laplacian of order ``2s`` for ``0 < s <= 1/4``.

    ``c_{N,s} int (u(z) - u(zeta)) / |z - zeta|^(N+2s) dV + A_{N,s} u(z)``;
    for Lipschitz ``u`` the integral converges absolutely in this range.
    """
    s = float(s)
    if not 0.0 < s <= MAX_FRACTIONAL_ORDER:
        raise ValueError(f"fractional order must lie in (0, {MAX_FRACTIONAL_ORDER}], got {s}")
    N = u.dim
    pts, single = _as_points(z, N + 1)
    c, A = frac_kernel_constant(N, s), frac_zeroth_order(N, s)

    def at(level):
        r = sphere_rule(N, level, extra_panels=4 + 2 * level)
        return c * _sphere_singular(u, pts, r, N + 2.0 * s) + A * u(pts)

    est = refine(at, tol)
    val, err = np.atleast_1d(est.value), np.atleast_1d(est.error)
    return OperatorSample(np.asarray(z), _squeeze(val, single), _squeeze(err, single), est.level)


def log_laplacian_point(v, x, tol=None):
    """Flat logarithmic Laplacian of ``v`` at point(s) ``x``.

    ``c_N int_{|y-x|<1} (v(x) - v(y)) / |x-y|^N dy
    - c_N int_{|y-x|>1} v(y) / |x-y|^N dy + rho_N v(x)``.
    """
    N = v.dim
    if v.decay <= 0:
        warnings.warn("tail integral diverges for a field without decay", RuntimeWarning)
    pts, single = _as_points(x, N)
    est = refine(lambda level: log_laplacian_fixed(v, pts, level), tol)
    val, err = np.atleast_1d(est.value), np.atleast_1d(est.error)
    return OperatorSample(np.asarray(x), _squeeze(val, single), _squeeze(err, single), est.level)


def log_laplacian_fixed(v, pts, level):
    """Flat log Laplacian at each row of ``pts`` with the rules of one level."""
    cN, rho = kernel_constant(v.dim), rho_constant(v.dim)
    out = np.empty(len(pts))
    for k, p in enumerate(pts):
        rule = point_rule(v, p, level)
        out[k] = cN * (integrate_ball_diff(v, p, rule) - integrate_tail(v, p, rule))
    return out + rho * v(pts)


def _settings(tol, **kw):
    tol = tol or DEFAULT_TOLERANCE
    out = {"target_abs_tol": tol.target_abs_tol, "max_refinement_level": tol.max_refinement_level}
    out.update(kw)
    return out


# Residual checks ---------------------------------------------------------------


def spectral_residual(N, degree, points, tol=None, tolerance=1e-5, pole=None):
    """Relative residual of ``P Y = phi_N(b_i) Y`` for a zonal harmonic ``Y``.

    Residuals are ``|P Y(z) - phi_N(b_i) Y(z)| / max|Y|``; ``extra`` records
    the least-squares measured symbol.
    """
    Y = zonal_harmonic(N, degree, pole)
    points = np.atleast_2d(points)
    y = Y(points)
    py = np.atleast_1d(p_log_sphere(Y, points, tol).value)
    symbol = phi_log_symbol(N, laplace_eigenvalue(degree, N))
    scale = float(np.abs(Y(Y.focus[None, :]))[0])
    measured = float(py @ y / (y @ y)) if y @ y > 0 else float("nan")
    return ResidualReport(
        f"spectral N={N} i={degree}",
        points,
        (py - symbol * y) / scale,
        tolerance,
        settings=_settings(tol),
        extra={"symbol": symbol, "measured_symbol": measured},
    )


def intertwining_residual(u, x, tol=None, tolerance=1e-4):
    """Residual of the sphere/plane intertwining identity at plane point(s) ``x``.

    Compares ``phi^(N/2) (P u)(stereo_inv x)`` with
    ``L v(x) - 2 v(x) ln phi(x)`` for ``v = iota(u)``.
    """
    pts = np.atleast_2d(np.asarray(x, float))
    N = u.dim
    v = iota_push(u)
    phi = conformal_factor(pts)
    lhs = phi ** (N / 2.0) * np.atleast_1d(p_log_sphere(u, stereo_inv(pts), tol).value)
    lv = np.atleast_1d(log_laplacian_point(v, pts, tol).value)
    rhs = lv - 2.0 * v(pts) * np.log(phi)
    return ResidualReport(
        f"intertwining {u.name}", pts, lhs - rhs, tolerance, settings=_settings(tol)
    )


def conformal_operator(eta, f, z, tol=None):
    """Log operator of the metric ``eta g`` applied to ``f`` at ``z``.

    Defined through the conformal covariance law
    ``eta^(-N/4) P(eta^(N/4) f) - f ln eta``.
    """
    N = f.dim
    pts = np.atleast_2d(z)
    e = eta(pts)
    if np.any(e <= 0):
        raise ValueError("conformal factor must be strictly positive")
    q = N / 4.0
    w = eta.apply(lambda t: t**q) * f
    return e ** (-q) * np.atleast_1d(p_log_sphere(w, pts, tol).value) - f(pts) * np.log(e)


def conformal_law_residual(eta1, eta2, f, z, tol=None, tolerance=1e-4):
    """Consistency of the covariance law under the factorisation ``eta = eta1 eta2``.

    Route one applies the law once with ``eta``; route two applies it with
    ``eta1`` and then again with ``eta2`` on top of the metric ``eta1 g``.
    """
    N = f.dim
    pts = np.atleast_2d(z)
    q = N / 4.0
    eta = eta1 * eta2
    direct = conformal_operator(eta, f, pts, tol)
    e2 = eta2(pts)
    inner = eta2.apply(lambda t: t**q) * f
    nested = e2 ** (-q) * conformal_operator(eta1, inner, pts, tol) - f(pts) * np.log(e2)
    return ResidualReport(
        f"conformal law {eta1.name}*{eta2.name}", pts, direct - nested, tolerance, settings=_settings(tol)
    )


def mobius_map(a):
    """Conformal automorphism of ``S^N`` moving ``-a/|a|`` toward ``a/|a|``, ``|a| < 1``.

    Returns ``(Psi, lam)``: the map and its conformal factor
    ``(1 - |a|^2) / |z - a|^2``.
    """
    a = np.asarray(a, dtype=float)
    aa = float(a @ a)
    if aa >= 1.0:
        raise ValueError("Mobius parameter must lie in the open unit ball")

    def psi(z):
        d = z - a
        dd = np.sum(d * d, axis=-1, keepdims=True)
        return ((1.0 - aa) * d - dd * a) / dd

    def lam(z):
        d = z - a
        return (1.0 - aa) / np.sum(d * d, axis=-1)

    return psi, lam


def naturality_residual(f, a, z, tol=None, tolerance=1e-4):
    """Residual of ``P_{Psi* g}(f o Psi) = (P f) o Psi`` for a Mobius map ``Psi``.

    The left side is evaluated through the covariance law with
    ``eta = lam^2``; the right side evaluates the round operator at the
    image points. The two routes share no integrand.
    """
    N = f.dim
    psi, lam = mobius_map(a)
    pts = np.atleast_2d(z)
    pulled = SphereField(lambda p: f(psi(p)), N, name=f"{f.name}oPsi")
    eta = SphereField(lambda p: lam(p) ** 2, N, name="lam^2")
    lhs = conformal_operator(eta, pulled, pts, tol)
    rhs = np.atleast_1d(p_log_sphere(f, psi(pts), tol).value)
    return ResidualReport(f"naturality {f.name}", pts, lhs - rhs, tolerance, settings=_settings(tol))


def slimit_errors(u, s_list, points, tol=None):
    """``E(s) = max_z |(P^s u - u)/s - P u|`` for each ``s`` in ``s_list``."""
    pts = np.atleast_2d(points)
    plog = np.atleast_1d(p_log_sphere(u, pts, tol).value)
    uz = u(pts)
    errs = []
    for s in s_list:
        ps = np.atleast_1d(p_s_sphere(u, pts, s, tol).value)
        errs.append(float(np.max(np.abs((ps - uz) / s - plog))))
    return np.array(errs)


def symbol_slimit_error(N, s, lam):
    """``|(phi_{N,s}(lam) - 1)/s - phi_N(lam)|``, the s-limit error on one eigenspace."""
    return abs((phi_s_symbol(N, s, lam) - 1.0) / s - phi_log_symbol(N, lam))


def slimit_convergence(u, s_list, points, tol=None, bracket=(0.3, 0.7)):
    """First-order convergence of ``(P^s u - u)/s`` to the log operator.

    Residuals are the distances of the successive ratios
    ``E(s_{k+1}) / E(s_k)`` from ``bracket``; the entry passes when every
    ratio lies inside it.
    """
    s_list = [float(s) for s in s_list]
    if any(b >= a for a, b in zip(s_list, s_list[1:])):
        raise ValueError("s_list must be strictly decreasing")
    errs = slimit_errors(u, s_list, points, tol)
    ratios = errs[1:] / errs[:-1]
    lo, hi = bracket
    viol = np.maximum(0.0, np.maximum(lo - ratios, ratios - hi))
    return ResidualReport(
        f"s-limit {u.name}",
        [{"s_pair": [a, b]} for a, b in zip(s_list, s_list[1:])],
        viol,
        0.0,
        settings=_settings(tol, bracket=list(bracket)),
        extra={"s": s_list, "E": errs, "ratios": ratios},
    )


def q_curvature_check(N, points, tol=None, tolerance=1e-8):
    """Compare ``P(1)`` at the given points with the closed form ``A_N``."""
    one = zonal_harmonic(N, 0)
    pts = np.atleast_2d(points)
    val = np.atleast_1d(p_log_sphere(one, pts, tol).value)
    return ResidualReport(
        f"q-curvature N={N}", pts, val - q_curvature(N), tolerance, settings=_settings(tol),
        extra={"q_curvature": q_curvature(N)},
    )


def explicit_fields(N):
    """Closed-form flat images of ``1``, ``z_{N+1}`` and ``z_1`` with their log-Laplacian factors.

    Returns ``(name, field, factor)`` triples where ``L v = factor(x) v(x)``;
    the fields are written out directly rather than obtained by transfer.
    """
    AN = q_curvature(N)
    first = 2.0 * digamma((N + 2) / 2.0)
    p = (N + 2) / 2.0

    def log_phi2(x):
        return 2.0 * np.log(conformal_factor(x))

    def const(x):
        return conformal_factor(x) ** (N / 2.0)

    def height(x):
        r2 = np.sum(x * x, axis=-1)
        return 2.0 ** (N / 2.0) * (1.0 - r2) / (1.0 + r2) ** p

    def lateral(x):
        return 2.0**p * x[..., 0] / (1.0 + np.sum(x * x, axis=-1)) ** p

    return [
        ("phi^(N/2)", PlaneField(const, N, decay=N, radial=True, name="phi^(N/2)"), lambda x: AN + log_phi2(x)),
        ("v_height", PlaneField(height, N, decay=N, radial=True, name="v_height"), lambda x: first + log_phi2(x)),
        ("v_lateral", PlaneField(lateral, N, decay=N, name="v_lateral"), lambda x: first + log_phi2(x)),
    ]


def explicit_residuals(N, points, tol=None, tolerance=1e-5):
    """Pointwise residuals ``L v - factor v`` for the closed-form fields of :func:`explicit_fields`."""
    pts = np.atleast_2d(points)
    out = []
    for name, v, factor in explicit_fields(N):
        lv = np.atleast_1d(log_laplacian_point(v, pts, tol).value)
        out.append(
            ResidualReport(f"explicit {name} N={N}", pts, lv - factor(pts) * v(pts), tolerance, settings=_settings(tol))
        )
    return out
