"""Quadratic forms, norms and functional inequalities on the sphere and in R^N.

Flat-space integrals exploit radial symmetry: a field radial about a centre
``c`` reduces volume integrals to one dimension, because the log Laplacian
commutes with rotations about ``c``. Sphere integrals likewise use the
invariant axes recorded on a :class:`~logconf.geometry.SphereField`.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .constants import (
    beckner_constant,
    kappa_constant,
    kernel_constant,
    pitt_constant,
    q_curvature,
    rho_constant,
    sphere_area,
)
from .geometry import _span_axes, conformal_factor
from .operators import _sphere_singular, log_laplacian_fixed
from .quadrature import (
    Estimate,
    ToleranceConfig,
    _frame,
    _frame_directions,
    _shell_sums,
    plane_volume_rule,
    point_rule,
    refine,
    sphere_rule,
    sphere_volume_rule,
)
from .reports import ResidualReport

# Forms converge more slowly than point values and the checks built on them
# need far less than point accuracy; this is the default for them.
FORM_TOLERANCE = ToleranceConfig(target_abs_tol=1e-7, max_refinement_level=8, target_rel_tol=1e-5)


@dataclass(frozen=True)
class FormValue:
    """A computed form with the method used and an error estimate."""

    name: str
    value: float
    method: str
    error_estimate: float


def _common_center(fields):
    c = fields[0].center
    if all(f.radial for f in fields) and all(np.allclose(f.center, c, atol=1e-14) for f in fields):
        return c
    return None


def _plane_nodes(fields, level, origin=None, log_origin=False):
    """Volume nodes suited to products of ``fields`` and an optional weight.

    ``origin`` is the centre of a radial weight; the rule collapses to one
    dimension when every field is radial about that same point, and to two
    when they are radial about another common point.
    """
    N = fields[0].dim
    c = _common_center(fields)
    scale = min(f.scale for f in fields)
    if c is not None and (origin is None or np.allclose(origin, c, atol=1e-14)):
        return plane_volume_rule(N, level, c, c, scale, collapse=True, log_origin=log_origin)
    if N > 2 and c is None:
        raise NotImplementedError("non-radial flat volume integrals are limited to N <= 2")
    o = np.zeros(N) if origin is None else np.asarray(origin, float)
    focus = fields[0].center
    # fields radial about c times a weight radial about o: symmetric about the line o-c
    return plane_volume_rule(N, level, o, focus, scale, log_origin=log_origin, axial=c is not None)


def _tol(tol):
    return tol or FORM_TOLERANCE


def plane_weighted_l2(v1, v2, weight=None, tol=None, weight_origin=None, log_origin=False):
    """``int v1 v2 w dx`` for an optional weight ``w`` radial about ``weight_origin``."""

    def at(level):
        pts, w = _plane_nodes([v1, v2], level, weight_origin, log_origin)
        vals = v1(pts) * v2(pts)
        if weight is not None:
            vals = vals * weight(pts)
        return float(w @ vals)

    return refine(at, _tol(tol))


# Fields are immutable, so the two expensive pairings are memoised by identity;
# norms, Pitt margins and Beckner sides all reuse them.
@lru_cache(maxsize=128)
def form_el_pairing(v1, v2, tol=None):
    """``E_L(v1, v2) = int v2 L v1 dx`` evaluated through the pointwise operator."""

    def at(level):
        pts, w = _plane_nodes([v1, v2], level)
        return float(w @ (v2(pts) * log_laplacian_fixed(v1, pts, level + 1)))

    est = refine(at, _tol(tol))
    return FormValue("E_L", est.value, "operator-pairing identity", float(est.error))


def _ball_products(v1, v2, pts, level):
    # int_{|y-x|<1} (v1(x)-v1(y))(v2(x)-v2(y)) / |x-y|^N dy at each point
    out = np.empty(len(pts))
    v1x, v2x = v1(pts), v2(pts)
    for k, x in enumerate(pts):
        rule = point_rule(v1, x, level)
        dirs, dw = _frame_directions(rule, x, v1.center)
        y = x[None, None, :] + rule.ball_r[:, None, None] * dirs[None, :, :]
        prod = (v1x[k] - v1(y)) * (v2x[k] - v2(y))
        out[k] = rule.ball_w @ (prod @ dw)
    return out


def _tails(v, pts, level):
    out = np.empty(len(pts))
    for k, x in enumerate(pts):
        rule = point_rule(v, x, level)
        dirs, dw = _frame_directions(rule, x, v.center)
        out[k] = rule.tail_w @ _shell_sums(v, x, rule.tail_r, dirs, dw)
    return out


def form_e(v1, v2, tol=None):
    """``(c_N / 2) int int_{|x-y|<1} (v1(x)-v1(y)) (v2(x)-v2(y)) / |x-y|^N``."""
    cN = kernel_constant(v1.dim)

    def at(level):
        pts, w = _plane_nodes([v1, v2], level)
        return 0.5 * cN * float(w @ _ball_products(v1, v2, pts, level + 1))

    est = refine(at, _tol(tol))
    return FormValue("E", est.value, "direct double integral", float(est.error))


def double_tail(v1, v2, tol=None):
    """``int int_{|x-y|>=1} v1(x) v2(y) / |x-y|^N dx dy``."""

    def at(level):
        pts, w = _plane_nodes([v1, v2], level)
        return float(w @ (v1(pts) * _tails(v2, pts, level + 1)))

    return refine(at, _tol(tol))


def form_el_direct(v1, v2, tol=None):
    """``E_L`` assembled as ``E - c_N (double tail) + rho_N int v1 v2``."""
    N = v1.dim
    e = form_e(v1, v2, tol)
    dt = double_tail(v1, v2, tol)
    l2 = plane_weighted_l2(v1, v2, tol=tol)
    value = e.value - kernel_constant(N) * dt.value + rho_constant(N) * l2.value
    err = e.error_estimate + kernel_constant(N) * float(dt.error) + abs(rho_constant(N)) * float(l2.error)
    return FormValue("E_L", value, "direct double integral", err)


def form_el(v1, v2, tol=None, cross_check=False):
    """The bilinear form of the flat log Laplacian.

    Returns the operator-pairing value, and with ``cross_check`` also the
    direct evaluation as a second :class:`FormValue`.
    """
    primary = form_el_pairing(v1, v2, tol)
    if not cross_check:
        return primary
    return primary, form_el_direct(v1, v2, tol)


# Norms ---------------------------------------------------------------------------


def _log_weight_e(pts):
    return np.log(math.e + np.sum(pts * pts, axis=-1))


def _log_phi_inv2(pts):
    return -2.0 * np.log(conformal_factor(pts))


def _log_abs2(pts):
    return np.log(np.sum(pts * pts, axis=-1))


def norm_dlog(v, tol=None):
    """``(E(v, v) + int v^2 ln(e + |x|^2) dx)^(1/2)``."""
    e = form_e(v, v, tol).value
    w = plane_weighted_l2(v, v, _log_weight_e, tol, weight_origin=np.zeros(v.dim)).value
    return math.sqrt(max(e + w, 0.0))


def d_norm_squared(v, tol=None):
    """``E_L(v, v) + int v^2 ln(phi^-2) + (kappa - A_N) int v^2``.

    With this shift the flat norm equals the sphere norm of the pulled-back
    field exactly.
    """
    N = v.dim
    el = form_el_pairing(v, v, tol).value
    wl = plane_weighted_l2(v, v, _log_phi_inv2, tol, weight_origin=np.zeros(N)).value
    l2 = plane_weighted_l2(v, v, tol=tol).value
    return el + wl + (kappa_constant(N) - q_curvature(N)) * l2


def norm_d(v, tol=None):
    """Norm of the flat energy space isometric to the sphere norm."""
    sq = d_norm_squared(v, tol)
    if sq < -1e-8:
        raise ArithmeticError(f"negative squared norm {sq:.3g}")
    return math.sqrt(max(sq, 0.0))


@lru_cache(maxsize=128)
def sphere_pairing(u, w, tol=None):
    """``int_{S^N} w P u dV`` using the symmetry shared by ``u`` and ``w``."""
    N = u.dim
    axes = _span_axes(u.axes, w.axes)

    def at(level):
        pts, wt = sphere_volume_rule(N, level, axes, u.focus_direction())
        pu = kernel_constant(N) * _sphere_singular(u, pts, sphere_rule(N, level), N)
        pu = pu + q_curvature(N) * u(pts)
        return float(wt @ (w(pts) * pu))

    return refine(at, _tol(tol))


def _zonal_integral(g, u):
    # int_{S^N} g(z) dV for g depending only on the height above u's axis
    N = u.dim
    pole = u.symmetry_axis()
    frame = _frame(pole)
    area = sphere_area(N - 1)

    def integrand(theta):
        z = np.sin(theta) * frame[:, 0] + np.cos(theta) * pole
        return float(g(z[None, :])[0]) * np.sin(theta) ** (N - 1) * area

    val, err = integrate.quad(integrand, 0.0, np.pi, epsabs=1e-13, epsrel=1e-12, limit=400)
    return Estimate(val, err, 0)


def sphere_l2(u, w=None, tol=None, fn=None):
    """``int_{S^N} u w dV``, or ``int fn(u) dV`` when ``fn`` is given.

    ``fn(u)`` may be non-smooth where ``u`` vanishes; for zonal ``u`` that
    case is handed to adaptive quadrature in the polar angle.
    """
    N = u.dim
    axes = u.axes if w is None else _span_axes(u.axes, w.axes)
    if fn is not None and u.zonal:
        return _zonal_integral(lambda z: fn(u(z)), u)

    def at(level):
        pts, wt = sphere_volume_rule(N, level, axes, u.focus_direction())
        vals = fn(u(pts)) if fn is not None else u(pts) * (u(pts) if w is None else w(pts))
        return float(wt @ vals)

    return refine(at, _tol(tol))


def h_norm_squared(u, tol=None):
    """``int u P u dV + (kappa - A_N) int u^2 dV``."""
    N = u.dim
    return sphere_pairing(u, u, tol).value + (kappa_constant(N) - q_curvature(N)) * sphere_l2(u, tol=tol).value


def norm_h_sphere(u, tol=None):
    """Energy norm of the logarithmic Sobolev space on ``S^N``."""
    sq = h_norm_squared(u, tol)
    if sq < -1e-8:
        raise ArithmeticError(f"negative squared norm {sq:.3g}; check the kappa shift")
    return math.sqrt(max(sq, 0.0))


@dataclass(frozen=True)
class NormReport:
    """Both sides of the isometry for one corpus item, plus the weighted norm."""

    item: str
    h_sphere_norm: float
    d_norm: float
    dlog_norm: float
    kappa: float

    @property
    def isometry_gap(self):
        return abs(self.d_norm - self.h_sphere_norm) / self.h_sphere_norm

    @property
    def equivalence_ratio(self):
        return self.d_norm / self.dlog_norm


def norm_report(item, u, v, tol=None):
    """Compute all three norms for a sphere field ``u`` and its flat image ``v``."""
    return NormReport(item, norm_h_sphere(u, tol), norm_d(v, tol), norm_dlog(v, tol), kappa_constant(u.dim))


# Inequalities ----------------------------------------------------------------------


def pitt_margin(v, tol=None):
    """``E_L(v, v) + int ln|x|^2 v^2 - a_N int v^2``; non-negative by the sharp inequality."""
    N = v.dim
    el = form_el_pairing(v, v, tol).value
    lw = plane_weighted_l2(v, v, _log_abs2, tol, weight_origin=np.zeros(N), log_origin=True).value
    l2 = plane_weighted_l2(v, v, tol=tol).value
    return el + lw - pitt_constant(N) * l2


def pitt_check(fields, tol=None, tolerance=1e-6):
    """Pitt margins over a list of flat fields; violations below ``-tolerance`` fail."""
    margins = [pitt_margin(v, tol) for v in fields]
    N = fields[0].dim if fields else 0
    return ResidualReport(
        f"pitt N={N}",
        [{"item": v.name} for v in fields],
        [max(0.0, -m) for m in margins],
        tolerance,
        extra={"margins": margins, "pitt_constant": pitt_constant(N) if N else None},
    )


def positivity_margin(v, tol=None):
    """``||v||_D^2 - (2 ln 2 + 2 psi(N/4) + kappa) ||v||^2``."""
    N = v.dim
    l2 = plane_weighted_l2(v, v, tol=tol).value
    return d_norm_squared(v, tol) - (pitt_constant(N) + kappa_constant(N)) * l2


def _xlogx(t):
    t = np.asarray(t, float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = t[pos] * np.log(t[pos])
    return out


def beckner_sides(u, tol=None):
    """Left and right sides of the sphere log-Sobolev inequality.

    The left side ``int int |u(z)-u(w)|^2/|z-w|^N`` is obtained from the
    operator pairing as ``(2/c_N)(int u P u - A_N int u^2)``.
    """
    N = u.dim
    area = sphere_area(N)
    l2 = sphere_l2(u, tol=tol).value
    pair = sphere_pairing(u, u, tol).value
    lhs = 2.0 / kernel_constant(N) * (pair - q_curvature(N) * l2)
    scale = area / l2
    ent = sphere_l2(u, tol=tol, fn=lambda t: _xlogx(t * t * scale)).value / scale
    rhs = beckner_constant(N) * ent
    return lhs, rhs, l2


def beckner_margin(u, tol=None):
    lhs, rhs, _ = beckner_sides(u, tol)
    return lhs - rhs


def beckner_gap(u, tol=None):
    """Relative gap ``|L - R| / max(|L|, |R|)``, with a floor of ``1e-9 C_N ||u||^2``."""
    lhs, rhs, l2 = beckner_sides(u, tol)
    floor = 1e-9 * beckner_constant(u.dim) * l2
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), floor)


def beckner_check(fields, tol=None, tolerance=1e-6):
    """Beckner margins over a list of sphere fields."""
    margins = [beckner_margin(u, tol) for u in fields]
    N = fields[0].dim if fields else 0
    return ResidualReport(
        f"beckner N={N}",
        [{"item": u.name} for u in fields],
        [max(0.0, -m) for m in margins],
        tolerance,
        extra={"margins": margins},
    )


# Weight profile ----------------------------------------------------------------------


def a2_profile(N, r_grid):
    """Rows ``(r, H(r), N H(r))`` for the weight ``w(t) = ln(e + t^2)``.

    ``H(r)`` is the product of ``r^-N int_0^r t^(N-1) w(t) dt`` and the same
    average of ``1 / w``. Both are computed after substituting ``t = r s``
    with adaptive quadrature and a breakpoint where ``w`` starts to grow.
    """
    rows = []
    for r in np.asarray(r_grid, dtype=float):
        if r <= 0:
            raise ValueError("radii must be positive")
        brk = [min(0.5, 1.0 / r)]

        def w(s):
            return math.log(math.e + (r * s) ** 2)

        i1 = integrate.quad(lambda s: s ** (N - 1) * w(s), 0.0, 1.0, points=brk, epsabs=0.0, epsrel=1e-12, limit=200)[0]
        i2 = integrate.quad(lambda s: s ** (N - 1) / w(s), 0.0, 1.0, points=brk, epsabs=0.0, epsrel=1e-12, limit=200)[0]
        h = i1 * i2
        rows.append((float(r), h, N * h))
    return rows
