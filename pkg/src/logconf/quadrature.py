"""Quadrature rules for singular and long-range integrals on spheres and in R^N.

The building block is composite Gauss-Legendre on breakpoints that are graded
geometrically toward points where the integrand is singular or concentrated.
Sphere integrals use polar coordinates about a pole times a rule on the
cross-section sphere. Flat integrals use polar coordinates about the
evaluation point, split into the unit ball and its exterior; the exterior is
mapped onto a finite interval by ``r = R / t``.

Every rule is indexed by a refinement level. Adaptive drivers compare two
consecutive levels and stop once they agree to the requested absolute
tolerance.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .constants import sphere_area
from .geometry import rotate_to_pole

_CHUNK = 400_000


class QuadratureError(RuntimeError):
    """Raised when refinement stops before the target tolerance is met."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Stopping rule for adaptive quadrature.

    Parameters
    ----------
    target_abs_tol : float
        Accept a level once it agrees with the previous one to this absolute
        tolerance.
    max_refinement_level : int
        Give up (raise :class:`QuadratureError`) past this level.
    start_level : int
        First level to evaluate.
    target_rel_tol : float
        Also accept a change below this fraction of the value's magnitude.
    """

    target_abs_tol: float = 1e-8
    max_refinement_level: int = 10
    start_level: int = 0
    target_rel_tol: float = 0.0

    def __post_init__(self):
        if not self.target_abs_tol > 0:
            raise ValueError("target_abs_tol must be positive")

    def accepts(self, change, value):
        return np.all(change <= np.maximum(self.target_abs_tol, self.target_rel_tol * np.abs(value)))


DEFAULT_TOLERANCE = ToleranceConfig()


class Estimate(NamedTuple):
    """An adaptive result: value(s), error estimate(s) and the accepted level."""

    value: object
    error: object
    level: int


def refine(evaluate, tol=None):
    """Run ``evaluate(level)`` on increasing levels until two agree.

    ``evaluate`` may return a scalar or an array; the error estimate is the
    elementwise difference between the last two levels and every element
    must pass the tolerance.
    """
    tol = tol or DEFAULT_TOLERANCE
    prev = np.asarray(evaluate(tol.start_level), dtype=float)
    worst = np.inf
    for level in range(tol.start_level + 1, tol.max_refinement_level + 1):
        cur = np.asarray(evaluate(level), dtype=float)
        err = np.abs(cur - prev)
        worst = float(np.max(err)) if err.size else 0.0
        if tol.accepts(err, cur):
            value = cur.item() if cur.ndim == 0 else cur
            error = err.item() if err.ndim == 0 else err
            return Estimate(value, error, level)
        prev = cur
    raise QuadratureError(
        f"no convergence to {tol.target_abs_tol:g} by level "
        f"{tol.max_refinement_level} (last change {worst:.3g})"
    )


# One-dimensional rules --------------------------------------------------------


@lru_cache(maxsize=None)
def gauss_legendre(order):
    """Gauss-Legendre nodes and weights on ``[-1, 1]``."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def composite_gauss(breaks, order):
    """Composite Gauss-Legendre rule with ``order`` nodes on each panel."""
    breaks = np.asarray(breaks, dtype=float)
    a, b = breaks[:-1], breaks[1:]
    x, w = gauss_legendre(order)
    half = 0.5 * (b - a)
    nodes = (0.5 * (a + b))[:, None] + half[:, None] * x[None, :]
    weights = half[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


def graded_breaks(a, b, foci=(), h_min=None, ratio=2.0, h_max=None):
    """Breakpoints on ``[a, b]`` graded geometrically toward each focus.

    Panel widths start at ``h_min`` next to a focus and grow by ``ratio``
    away from it. Panels wider than ``h_max`` are split evenly.
    """
    pts = [a, b]
    if h_min is not None:
        for f in foci:
            f = min(max(f, a), b)
            pts.append(f)
            for sign in (1.0, -1.0):
                offset, width = 0.0, h_min
                while True:
                    offset += width
                    p = f + sign * offset
                    if p <= a or p >= b:
                        break
                    pts.append(p)
                    width *= ratio
    pts = np.unique(np.asarray(pts, dtype=float))
    if h_min is not None:
        keep = [pts[0]]
        for p in pts[1:-1]:
            if p - keep[-1] >= 0.25 * h_min:
                keep.append(p)
        if pts[-1] - keep[-1] < 0.25 * h_min and len(keep) > 1:
            keep.pop()
        keep.append(pts[-1])
        pts = np.asarray(keep)
    if h_max is not None:
        pts = _split_wide(pts, h_max)
    return pts


def geometric_breaks(a, b, n_panels, ratio=0.5):
    """``[a, b]`` split with panel widths shrinking by ``ratio`` toward ``a``."""
    frac = ratio ** np.arange(n_panels - 1, -1, -1, dtype=float)
    return np.concatenate([[a], a + (b - a) * frac])


# Rules on spheres -------------------------------------------------------------


def cross_section_rule(k, resolution):
    """Nodes and weights on ``S^k`` for ``k`` in 0, 1, 2.

    ``S^0`` is the two-point set, ``S^1`` uses the trapezoid rule with
    ``resolution`` points and ``S^2`` is Gauss-Legendre in the height times
    the trapezoid rule in longitude.
    """
    if k == 0:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if k == 1:
        ang = 2.0 * np.pi * (np.arange(resolution) + 0.5) / resolution
        pts = np.stack([np.cos(ang), np.sin(ang)], axis=1)
        return pts, np.full(resolution, 2.0 * np.pi / resolution)
    if k == 2:
        h, wh = gauss_legendre(max(2, resolution // 2))
        ang = 2.0 * np.pi * (np.arange(resolution) + 0.5) / resolution
        rho = np.sqrt(1.0 - h * h)
        pts = np.stack(
            [
                np.outer(rho, np.cos(ang)).ravel(),
                np.outer(rho, np.sin(ang)).ravel(),
                np.repeat(h, resolution),
            ],
            axis=1,
        )
        w = np.outer(wh, np.full(resolution, 2.0 * np.pi / resolution)).ravel()
        return pts, w
    raise ValueError("cross sections are implemented for S^0, S^1 and S^2 only")


@dataclass(frozen=True)
class PolarRule:
    """Rule on ``S^d`` in polar coordinates about the local pole ``e_{d+1}``.

    Attributes
    ----------
    points : ndarray, shape (J, d+1)
        Nodes in the local frame.
    weights : ndarray, shape (J,)
        Weights for the surface measure.
    polar : ndarray, shape (J,)
        Polar angle of each node measured from the pole.
    """

    dim: int
    points: np.ndarray
    weights: np.ndarray
    polar: np.ndarray

    @classmethod
    def build(cls, d, polar_breaks, order, resolution, collapse=False):
        """Gauss rule on the given polar breakpoints times a cross-section rule.

        With ``collapse`` the cross-section is replaced by a single node of
        full weight, exact for integrands symmetric about the pole.
        """
        if d == 0:
            return cls(0, np.array([[1.0], [-1.0]]), np.array([1.0, 1.0]), np.array([0.0, np.pi]))
        beta, wb = composite_gauss(polar_breaks, order)
        wb = wb * np.sin(beta) ** (d - 1)
        xi, wx = cross_section_rule(d - 1, resolution)
        if collapse:
            xi, wx = xi[:1], np.array([sphere_area(d - 1)])
        sb, cb = np.sin(beta), np.cos(beta)
        pts = np.concatenate(
            [
                (sb[:, None, None] * xi[None, :, :]).reshape(-1, d),
                np.repeat(cb, len(wx))[:, None],
            ],
            axis=1,
        )
        w = np.outer(wb, wx).ravel()
        return cls(d, pts, w, np.repeat(beta, len(wx)))

    def oriented(self, pole):
        """Nodes rotated so that the local pole lands on ``pole``."""
        if self.dim == 0:
            return self.points * np.sign(pole[0] if pole[0] != 0 else 1.0)
        return self.points @ rotate_to_pole(pole)


def sphere_rule(N, level=0, extra_panels=0, collapse=False):
    """Rule on ``S^N`` graded toward the pole, for kernels singular there.

    Level ``l`` uses ``6 + l + extra_panels`` geometric panels in the polar
    angle with ``8 + 2 l`` Gauss nodes each and a cross-section resolution
    of ``16 + 8 l``.
    """
    breaks = geometric_breaks(0.0, np.pi, 6 + level + extra_panels)
    breaks = _split_wide(breaks, np.pi / 4)
    return PolarRule.build(N, breaks, 8 + 2 * level, 16 + 8 * level, collapse=collapse)


def _split_wide(breaks, h_max):
    out = [breaks[0]]
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        n = max(1, int(math.ceil((hi - lo) / h_max - 1e-12)))
        out.extend(lo + (hi - lo) * np.arange(1, n + 1) / n)
    return np.asarray(out)


def integrate_sphere(f, N, rule=None, pole=None, tol=None, zonal=False):
    """Integrate ``f`` over ``S^N`` with respect to surface measure.

    Parameters
    ----------
    f : callable
        Vectorised integrand on points of shape ``(..., N+1)``.
    rule : PolarRule, optional
        Fixed rule; when omitted levels are refined until ``tol`` is met.
    pole : array_like, optional
        Where the polar grading is centred; ``e_{N+1}`` by default.
    zonal : bool
        Set when ``f`` depends only on the height above ``pole``.

    Returns
    -------
    float or Estimate
        A float for a fixed rule, an :class:`Estimate` otherwise.
    """
    pole = np.eye(N + 1)[-1] if pole is None else np.asarray(pole, float)

    def at(r):
        pts = r.oriented(pole)
        return float(np.dot(r.weights, f(pts)))

    if rule is not None:
        return at(rule)
    return refine(lambda lv: at(sphere_rule(N, lv, collapse=zonal)), tol)


# Rules on R^N -----------------------------------------------------------------


@dataclass(frozen=True)
class PlaneRule:
    """Polar rule about an evaluation point for the split ball/tail integrals.

    ``ball_r``/``ball_w`` discretise ``(0, 1)`` and ``tail_r``/``tail_w``
    discretise ``(1, inf)``; both weight sets are for the measure ``dr / r``.
    ``directions``/``dir_weights`` discretise ``S^{N-1}`` in a local frame
    whose pole is ``e_N``.
    """

    dim: int
    ball_r: np.ndarray
    ball_w: np.ndarray
    tail_r: np.ndarray
    tail_w: np.ndarray
    directions: PolarRule


def _order(level):
    return 10 + 2 * level


def direction_rule(N, level, distance, scale, collapse):
    """Directions on ``S^{N-1}`` graded toward the local pole.

    The grading resolves a feature of width ``scale`` seen from ``distance``.
    """
    if N == 1:
        return PolarRule.build(0, None, 0, 0)
    h = min(np.pi / 8, scale / (4.0 * max(distance, 1e-300)))
    breaks = graded_breaks(0.0, np.pi, foci=(0.0,), h_min=h, h_max=np.pi / 8)
    return PolarRule.build(N - 1, breaks, _order(level), 16 + 8 * level, collapse=collapse)


def plane_rule(N, level, distance=0.0, scale=1.0, collapse=False):
    """Build a :class:`PlaneRule` for a field concentrated at ``distance``.

    ``distance`` is the distance from the evaluation point to the field's
    focus and ``scale`` the width of the concentration there.
    """
    q = _order(level)
    h = min(scale, 1.0) / 4.0
    ball = graded_breaks(0.0, 1.0, foci=(0.0, min(distance, 1.0)), h_min=h, h_max=0.25)
    br, bw = composite_gauss(ball, q)
    far = max(2.0, 2.0 * (distance + 4.0 * scale))
    mid = graded_breaks(1.0, far, foci=(1.0, min(max(distance, 1.0), far)), h_min=h)
    mr, mw = composite_gauss(mid, q)
    t, tw = composite_gauss(geometric_breaks(0.0, 1.0, 8 + level), q)
    tail_r = np.concatenate([mr, far / t])
    tail_w = np.concatenate([mw / mr, tw / t])
    dirs = direction_rule(N, level, distance, scale, collapse)
    return PlaneRule(N, br, bw / br, tail_r, tail_w, dirs)


def _frame_directions(rule, x, focus):
    delta = np.asarray(focus, float) - x
    dist = float(np.linalg.norm(delta))
    if rule.directions.dim == 0:
        return rule.directions.points, rule.directions.weights
    pole = delta / dist if dist > 0 else np.eye(len(x))[-1]
    return rule.directions.oriented(pole), rule.directions.weights


def _shell_sums(v, x, radii, dirs, dw):
    # sum_j dw_j v(x + r_k d_j) for every radius r_k, evaluated in chunks
    out = np.empty(len(radii))
    step = max(1, _CHUNK // max(1, len(dw)))
    for s in range(0, len(radii), step):
        r = radii[s : s + step]
        pts = x[None, None, :] + r[:, None, None] * dirs[None, :, :]
        out[s : s + step] = v(pts) @ dw
    return out


def integrate_ball_diff(v, x, rule):
    """``int_{|y-x|<1} (v(x) - v(y)) / |x-y|^N dy`` with a fixed rule."""
    x = np.asarray(x, dtype=float)
    dirs, dw = _frame_directions(rule, x, v.center)
    vx = float(v(x))
    shells = _shell_sums(v, x, rule.ball_r, dirs, dw)
    return float(np.dot(rule.ball_w, vx * dw.sum() - shells))


def integrate_tail(v, x, rule):
    """``int_{|y-x|>1} v(y) / |x-y|^N dy`` with a fixed rule."""
    x = np.asarray(x, dtype=float)
    dirs, dw = _frame_directions(rule, x, v.center)
    return float(np.dot(rule.tail_w, _shell_sums(v, x, rule.tail_r, dirs, dw)))


def point_rule(v, x, level):
    """The :class:`PlaneRule` adapted to field ``v`` seen from point ``x``."""
    dist = float(np.linalg.norm(np.asarray(x, float) - v.center))
    return plane_rule(v.dim, level, dist, v.scale, collapse=v.radial)


# Volume rules -----------------------------------------------------------------


def half_line_rule(level, foci=(0.0,), scale=1.0, log_origin=False, far_depth=30):
    """Nodes and weights for ``int_0^inf g(r) dr`` with features at ``foci``.

    The interval ``[0, R]`` is graded toward the foci and ``[R, inf)`` is
    mapped to ``(0, 1]`` by ``r = R / t`` with panels graded toward ``t = 0``.
    With ``log_origin`` the panels next to ``r = 0`` are further graded
    geometrically, for integrands with a logarithmic singularity there.
    ``far_depth`` sets how many halvings reach toward ``t = 0``; integrands
    that are singular there, such as ``log t``, need a deep grading.
    """
    q = _order(level)
    h = scale / 4.0
    far = max(4.0 * scale, 2.0 * (max(foci) + 4.0 * scale))
    near = graded_breaks(0.0, far, foci=tuple(foci), h_min=h)
    if log_origin:
        first = near[1]
        near = np.concatenate([[0.0], first * 0.5 ** np.arange(24 + 2 * level, 0, -1), near[1:]])
    r, w = composite_gauss(near, q)
    t, tw = composite_gauss(geometric_breaks(0.0, 1.0, far_depth + 2 * level), q)
    return np.concatenate([r, far / t]), np.concatenate([w, far * tw / (t * t)])


def plane_volume_rule(
    N, level, origin, focus=None, scale=1.0, collapse=False, log_origin=False, axial=False
):
    """Nodes and weights for ``int_{R^N} F(x) dx`` in polar coordinates about ``origin``.

    Radial panels are graded toward 0 and toward the distance of ``focus``;
    directions are graded toward ``focus``. With ``collapse`` the integrand
    must be radial about ``origin`` and a single direction is used. With
    ``axial`` it must be invariant under rotations fixing the line through
    ``origin`` and ``focus``, and only the angle to that line is sampled.
    """
    origin = np.asarray(origin, dtype=float)
    focus = origin if focus is None else np.asarray(focus, dtype=float)
    delta = focus - origin
    dist = float(np.linalg.norm(delta))
    # flat integrands of fields decaying like |x|^-N behave like t^(N-1) log t
    depth = 30 if N == 1 else 14
    r, wr = half_line_rule(level, foci=(0.0, dist), scale=scale, log_origin=log_origin, far_depth=depth)
    if collapse:
        pts = origin + r[:, None] * np.eye(N)[-1]
        return pts, wr * r ** (N - 1) * sphere_area(N - 1)
    dirs = direction_rule(N, level, dist, scale, axial and dist > 0)
    if dirs.dim == 0:
        d_pts, dw = dirs.points, dirs.weights
    else:
        pole = delta / dist if dist > 0 else np.eye(N)[-1]
        d_pts, dw = dirs.oriented(pole), dirs.weights
    pts = origin + r[:, None, None] * d_pts[None, :, :]
    w = (wr * r ** (N - 1))[:, None] * dw[None, :]
    return pts.reshape(-1, N), w.ravel()


# Volume rules on spheres ---------------------------------------------------------


def _frame(first, second=None):
    """Orthonormal columns ``[g_1, .., g_k, second, first]`` completing the given axes."""
    n = len(first)
    cols = [np.asarray(first, float)]
    if second is not None:
        cols.append(np.asarray(second, float))
    q, _ = np.linalg.qr(np.column_stack(cols + list(np.eye(n))))
    for k, c in enumerate(cols):
        if q[:, k] @ c < 0:
            q[:, k] = -q[:, k]
    lead = len(cols)
    return np.column_stack([q[:, lead:]] + [q[:, k] for k in reversed(range(lead))])


def sphere_volume_rule(N, level=0, axes=None, focus=None):
    """Nodes and weights for ``int_{S^N} F dV`` exploiting the symmetry of ``F``.

    Parameters
    ----------
    axes : tuple of ndarray or None
        ``F`` is invariant under the orthogonal maps fixing these axes.
        With one axis (or none, for constants) the rule is one-dimensional in
        the polar angle, with two it is two-dimensional, otherwise a full
        product rule oriented toward ``focus`` is used.
    focus : ndarray, optional
        Direction where ``F`` is concentrated; polar angles are measured
        from it when it lies in the span of two axes.
    """
    q = 8 + 2 * level
    if axes is not None and len(axes) <= 1:
        panels = np.linspace(0.0, np.pi, 9 + level)
        pole = axes[0] if axes else np.eye(N + 1)[-1]
        rule = PolarRule.build(N, panels, q, 1, collapse=True)
        return rule.oriented(pole), rule.weights
    if axes is not None and len(axes) == 2:
        panels = np.linspace(0.0, np.pi, 7 + level)
        theta, wt = composite_gauss(panels, q)
        wt = wt * np.sin(theta) ** (N - 1)
        if N == 1:
            xi, wx = np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
        else:
            beta, wb = composite_gauss(panels, q)
            wx = wb * np.sin(beta) ** (N - 2) * sphere_area(N - 2)
            xi = np.zeros((len(beta), N))
            xi[:, 0] = np.sin(beta)
            xi[:, N - 1] = np.cos(beta)
        local = np.zeros((len(theta), len(wx), N + 1))
        local[..., :N] = np.sin(theta)[:, None, None] * xi[None, :, :]
        local[..., N] = np.cos(theta)[:, None]
        pts = local.reshape(-1, N + 1) @ _axial_frame(axes, focus).T
        return pts, np.outer(wt, wx).ravel()
    rule = sphere_rule(N, level)
    return rule.oriented(np.eye(N + 1)[-1] if focus is None else np.asarray(focus, float)), rule.weights


def _axial_frame(axes, focus):
    # frame whose last column is focus (when it lies in span(axes)) and next-to-last spans the rest
    a, b = (np.asarray(v, float) for v in axes)
    if focus is not None:
        f = np.asarray(focus, float)
        basis = np.linalg.qr(np.column_stack([a, b]))[0]
        if np.linalg.norm(f - basis @ (basis.T @ f)) < 1e-10:
            rest = basis @ (basis.T @ a) - (a @ f) * f
            if np.linalg.norm(rest) < 1e-8:
                rest = basis @ (basis.T @ b) - (b @ f) * f
            return _frame(f, rest / np.linalg.norm(rest))
    return _frame(a, b)
