"""Sphere and flat-space fields, stereographic projection and the conformal transfer.

Points on ``S^N`` are arrays with trailing axis of length ``N + 1``; points of
``R^N`` have trailing axis ``N``. Stereographic projection is taken from the
south pole ``-e_{N+1}``, so the north pole maps to the origin.
"""

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

# Distance to the south pole below which a point is treated as the pole itself.
POLE_EPS = 1e-9
# Offset used to evaluate the south-pole limit of a transferred field.
_POLE_OFFSET = 1e-5


class PoleError(ValueError):
    """Raised when a map is evaluated at the south pole where it is undefined."""


def _same_vector(a, b):
    return a is not None and b is not None and np.allclose(a, b, atol=1e-14)


def _evaluate(func, pts, leading):
    out = np.asarray(func(pts), dtype=float)
    if out.shape != leading:
        out = np.broadcast_to(out, leading).copy()
    return out


def _span_axes(a, b):
    # orthonormal basis of span(a, b) when its dimension is at most 2
    if a is None or b is None:
        return None
    vecs = [np.asarray(v, float) for v in (*a, *b)]
    if not vecs:
        return ()
    _, sv, vt = np.linalg.svd(np.array(vecs))
    rank = int(np.sum(sv > 1e-12 * sv[0]))
    if rank > 2:
        return None
    if rank == len(a):
        return a
    if rank == len(b):
        return b
    return tuple(vt[:rank])


@dataclass(frozen=True, eq=False)
class SphereField:
    """A real function on ``S^N``.

    Parameters
    ----------
    func : callable
        Maps an array of sphere points, shape ``(..., N+1)``, to values of
        shape ``(...)``.
    dim : int
        The sphere dimension ``N``.
    axes : tuple of ndarray, optional
        Unit vectors fixed by a symmetry group of the field: the field is
        invariant under every rotation fixing each of them. ``()`` means
        constant, one axis means zonal, ``None`` means no known symmetry.
    focus : ndarray, optional
        Direction where the field is concentrated, used to orient rules.
    smoothness : {"smooth", "lipschitz"}
        Regularity class, used only for bookkeeping.
    """

    func: Callable[[np.ndarray], np.ndarray]
    dim: int
    axes: Optional[tuple] = None
    focus: Optional[np.ndarray] = None
    smoothness: str = "smooth"
    name: str = ""

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        if z.shape[-1] != self.dim + 1:
            raise ValueError(f"expected points in R^{self.dim + 1}, got shape {z.shape}")
        return _evaluate(self.func, z, z.shape[:-1])

    @property
    def constant(self):
        return self.axes == ()

    @property
    def zonal(self):
        return self.axes is not None and len(self.axes) <= 1

    def symmetry_axis(self):
        """Axis about which the field is zonal, or ``None``."""
        if self.axes == ():
            return north_pole(self.dim)
        if self.axes is not None and len(self.axes) == 1:
            return self.axes[0]
        return None

    def focus_direction(self):
        if self.focus is not None:
            return self.focus
        if self.axes:
            return self.axes[0]
        return north_pole(self.dim)

    def _combine(self, other, op, name):
        if isinstance(other, SphereField):
            if other.dim != self.dim:
                raise ValueError("fields live on different spheres")
            f, g = self.func, other.func
            focus = self.focus if self.focus is not None else other.focus
            return SphereField(
                lambda z: op(f(z), g(z)),
                self.dim,
                axes=_span_axes(self.axes, other.axes),
                focus=focus,
                smoothness=_weakest(self.smoothness, other.smoothness),
                name=name,
            )
        c = float(other)
        f = self.func
        return replace(self, func=lambda z: op(f(z), c), name=name)

    def __add__(self, other):
        return self._combine(other, np.add, f"({self.name}+{_label(other)})")

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, np.subtract, f"({self.name}-{_label(other)})")

    def __mul__(self, other):
        return self._combine(other, np.multiply, f"{_label(other)}*{self.name}")

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def apply(self, fn, name=None):
        """Compose with a scalar map, ``z -> fn(self(z))``; symmetry is kept."""
        f = self.func
        return replace(self, func=lambda z: fn(f(z)), name=name or self.name)


@dataclass(frozen=True, eq=False)
class PlaneField:
    """A real function on ``R^N``.

    Parameters
    ----------
    func : callable
        Maps points of shape ``(..., N)`` to values of shape ``(...)``.
    dim : int
        The dimension ``N``.
    decay : float
        Exponent ``d`` with ``|v(x)| = O(|x|^-d)``; ``inf`` for rapid decay.
    center : ndarray, optional
        Focus point where the field is concentrated; the origin if omitted.
    radial : bool
        Whether ``v`` depends only on ``|x - center|``.
    scale : float
        Smallest length scale on which the field varies near ``center``.
    """

    func: Callable[[np.ndarray], np.ndarray]
    dim: int
    decay: float = np.inf
    center: Optional[np.ndarray] = None
    radial: bool = False
    scale: float = 1.0
    smoothness: str = "smooth"
    name: str = ""

    def __post_init__(self):
        c = np.zeros(self.dim) if self.center is None else np.asarray(self.center, float)
        object.__setattr__(self, "center", c)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise ValueError(f"expected points in R^{self.dim}, got shape {x.shape}")
        return _evaluate(self.func, x, x.shape[:-1])

    def _combine(self, other, op, name, product=False):
        if isinstance(other, PlaneField):
            if other.dim != self.dim:
                raise ValueError("fields live in different dimensions")
            same = _same_vector(self.center, other.center)
            f, g = self.func, other.func
            decay = self.decay + other.decay if product else min(self.decay, other.decay)
            return PlaneField(
                lambda x: op(f(x), g(x)),
                self.dim,
                decay=decay,
                center=self.center if same else None,
                radial=same and self.radial and other.radial,
                scale=min(self.scale, other.scale),
                smoothness=_weakest(self.smoothness, other.smoothness),
                name=name,
            )
        c = float(other)
        f = self.func
        return replace(self, func=lambda x: op(f(x), c), name=name)

    def __add__(self, other):
        return self._combine(other, np.add, f"({self.name}+{_label(other)})")

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, np.subtract, f"({self.name}-{_label(other)})")

    def __mul__(self, other):
        return self._combine(other, np.multiply, f"{_label(other)}*{self.name}", product=True)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0


def _label(obj):
    return obj.name if hasattr(obj, "name") else repr(float(obj))


def _weakest(a, b):
    return "lipschitz" if "lipschitz" in (a, b) else "smooth"


# Maps ------------------------------------------------------------------------


def _near_south_pole(z):
    d2 = np.sum(z[..., :-1] ** 2, axis=-1) + (1.0 + z[..., -1]) ** 2
    return d2 <= POLE_EPS**2


def stereo(z):
    """Stereographic projection ``z -> z' / (1 + z_{N+1})`` from the south pole."""
    z = np.asarray(z, dtype=float)
    if np.any(_near_south_pole(z)):
        raise PoleError("stereographic projection is undefined at the south pole")
    return z[..., :-1] / (1.0 + z[..., -1])[..., None]


def stereo_inv(x):
    """Inverse projection ``x -> (2x, 1 - |x|^2) / (1 + |x|^2)``."""
    x = np.asarray(x, dtype=float)
    r2 = np.sum(x * x, axis=-1)
    denom = 1.0 + r2
    return np.concatenate([2.0 * x / denom[..., None], ((1.0 - r2) / denom)[..., None]], axis=-1)


def conformal_factor(x):
    """``2 / (1 + |x|^2)``; the round metric pulls back to its square times the flat one."""
    x = np.asarray(x, dtype=float)
    return 2.0 / (1.0 + np.sum(x * x, axis=-1))


def chordal_distance(z, w):
    """Euclidean distance between sphere points."""
    return np.linalg.norm(np.asarray(z, float) - np.asarray(w, float), axis=-1)


def north_pole(N):
    """The point ``e_{N+1}`` of ``S^N``."""
    e = np.zeros(N + 1)
    e[-1] = 1.0
    return e


def iota_push(u):
    """Transfer a sphere field to the plane: ``v = phi^(N/2) u o stereo_inv``."""
    N = u.dim
    half = N / 2.0

    def func(x):
        return conformal_factor(x) ** half * u(stereo_inv(x))

    axis = u.symmetry_axis()
    radial = axis is not None and np.allclose(np.abs(axis[-1]), 1.0)
    return PlaneField(
        func,
        N,
        decay=float(N),
        center=np.zeros(N),
        radial=bool(radial),
        scale=1.0,
        smoothness=u.smoothness,
        name=f"iota({u.name})",
    )


def iota_pull(v):
    """Inverse transfer ``u(z) = phi(stereo(z))^(-N/2) v(stereo(z))``.

    At the south pole the value is the limit along the sphere, which exists
    when ``v`` decays at least like ``|x|^-N``. It is computed as the average
    over ``2N`` symmetric nearby points, accurate to second order.
    """
    N = v.dim
    half = N / 2.0

    def plain(z):
        x = stereo(z)
        return (0.5 * (1.0 + np.sum(x * x, axis=-1))) ** half * v(x)

    offsets = []
    for k in range(N):
        for sign in (1.0, -1.0):
            w = np.zeros(N + 1)
            w[k] = sign * np.sin(_POLE_OFFSET)
            w[-1] = -np.cos(_POLE_OFFSET)
            offsets.append(w)
    offsets = np.array(offsets)

    def func(z):
        z = np.asarray(z, dtype=float)
        at_pole = _near_south_pole(z)
        if not np.any(at_pole):
            return plain(z)
        if v.decay < N:
            raise PoleError("field decays too slowly to extend to the south pole")
        out = np.empty(z.shape[:-1])
        out[~at_pole] = plain(z[~at_pole])
        out[at_pole] = np.mean(plain(offsets))
        return out

    e = north_pole(N)
    if not v.radial:
        axes = None
    elif np.allclose(v.center, 0.0):
        axes = (e,)
    else:
        axes = _span_axes((e,), (stereo_inv(v.center),))
    return SphereField(
        func,
        N,
        axes=axes,
        focus=stereo_inv(v.center),
        smoothness=v.smoothness,
        name=f"iota_inv({v.name})",
    )


def rotate_to_pole(z):
    """Orthogonal matrix ``R`` with ``R z = e_{N+1}``.

    Built from the Householder reflection exchanging ``z`` and ``e_{N+1}``
    composed with a flip of the first axis, so that ``det R = +1``.
    """
    z = np.asarray(z, dtype=float)
    n = z.shape[-1]
    e = np.zeros(n)
    e[-1] = 1.0
    w = z - e
    ww = w @ w
    if ww < 1e-28:
        return np.eye(n)
    householder = np.eye(n) - 2.0 * np.outer(w, w) / ww
    flip = np.eye(n)
    flip[0, 0] = -1.0
    return flip @ householder


def random_sphere_points(N, count, rng):
    """``count`` points uniformly distributed on ``S^N``."""
    g = rng.standard_normal((count, N + 1))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def random_ball_points(N, count, radius, rng):
    """``count`` points uniformly distributed in the ball ``|x| <= radius`` of ``R^N``."""
    g = rng.standard_normal((count, N))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = radius * rng.random(count) ** (1.0 / N)
    return g * r[:, None]


def make_rng(seed):
    """Counter-based generator (Philox) so that results depend only on ``seed``."""
    return np.random.Generator(np.random.Philox(int(seed)))
