"""Zonal spherical harmonics and the eigenvalue symbols of the conformal operators."""

import math
from dataclasses import dataclass

import numpy as np

from .constants import _check_dim, _check_order
from .geometry import SphereField
from .specfun import digamma, gamma_ratio, trigamma


def gegenbauer(i, lam, t):
    """Gegenbauer polynomial ``C_i^(lam)(t)`` by the three-term recurrence.

    For ``lam = 0`` the Chebyshev polynomial ``T_i`` is returned instead,
    which is the limit relevant for the circle.
    """
    t = np.asarray(t, dtype=float)
    prev = np.ones_like(t)
    if i == 0:
        return prev
    cur = 2.0 * lam * t if lam != 0.0 else t.copy()
    for n in range(2, i + 1):
        if lam == 0.0:
            prev, cur = cur, 2.0 * t * cur - prev
        else:
            prev, cur = cur, (2.0 * t * (n + lam - 1.0) * cur - (n + 2.0 * lam - 2.0) * prev) / n
    return cur


@dataclass(frozen=True)
class ZonalHarmonic:
    """Degree-``i`` zonal harmonic on ``S^N`` about the unit vector ``pole``.

    The value at ``z`` is ``C_i^((N-1)/2)(z . pole)``, or ``cos(i theta)``
    on the circle. No normalisation is applied.
    """

    degree: int
    pole: np.ndarray
    dim: int

    def __call__(self, z):
        t = np.clip(np.asarray(z, dtype=float) @ self.pole, -1.0, 1.0)
        return gegenbauer(self.degree, (self.dim - 1) / 2.0, t)

    def field(self):
        """Wrap as a :class:`~logconf.geometry.SphereField`."""
        return SphereField(
            self,
            self.dim,
            axes=() if self.degree == 0 else (self.pole,),
            focus=self.pole,
            name=f"Y{self.degree}",
        )


def zonal_harmonic(N, degree, pole=None):
    """Zonal harmonic field of the given degree; the pole defaults to ``e_{N+1}``."""
    N = _check_dim(N)
    if pole is None:
        pole = np.eye(N + 1)[-1]
    pole = np.asarray(pole, dtype=float)
    pole = pole / np.linalg.norm(pole)
    return ZonalHarmonic(int(degree), pole, N).field()


def zonal_eval(Y, z):
    """Evaluate a :class:`ZonalHarmonic` at sphere points ``z``."""
    return Y(z)


# Eigenvalues -------------------------------------------------------------------


def laplace_eigenvalue(i, N):
    """``i (i + N - 1)``, the Laplace-Beltrami eigenvalue on degree ``i``."""
    return i * (i + N - 1)


def harmonic_multiplicity(i, N):
    """Dimension of the degree-``i`` harmonic space on ``S^N``, as an exact integer."""
    N = _check_dim(N)
    if i < 0:
        raise ValueError("degree must be non-negative")
    if i == 0:
        return 1
    if i == 1:
        return N + 1
    return math.comb(N + i, N) - math.comb(N + i - 2, N)


@dataclass(frozen=True)
class EigenvalueRecord:
    """Spectral data of one degree: ``b``, multiplicity ``c`` and the log symbol."""

    degree: int
    dim: int
    b: int
    c: int
    phi_log: float

    def phi_s(self, s):
        """Symbol of the order-``2s`` operator on this degree."""
        return phi_s_symbol(self.dim, s, self.b)


def lb_eigenvalue(N, i):
    """The :class:`EigenvalueRecord` of degree ``i`` on ``S^N``."""
    b = laplace_eigenvalue(i, N)
    return EigenvalueRecord(i, N, b, harmonic_multiplicity(i, N), float(phi_log_symbol(N, b)))


def _symbol_root(N, lam):
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < 0.0):
        raise ValueError("symbol argument must be non-negative")
    return np.sqrt((N - 1) ** 2 / 4.0 + lam)


def _out(arr):
    arr = np.asarray(arr)
    return arr.item() if arr.ndim == 0 else arr


def phi_log_symbol(N, lam):
    """``2 psi(sqrt((N-1)^2/4 + lam) + 1/2)``, eigenvalue of the log operator.

    At ``lam = i (i + N - 1)`` this reduces to ``2 psi(i + N/2)``.
    """
    N = _check_dim(N)
    return _out(2.0 * np.asarray(digamma(_symbol_root(N, lam) + 0.5)))


def phi_log_symbol_derivative(N, lam):
    """Derivative of :func:`phi_log_symbol` in ``lam`` (infinite at ``N = 1, lam = 0``)."""
    N = _check_dim(N)
    root = _symbol_root(N, lam)
    with np.errstate(divide="ignore"):
        return _out(2.0 * np.asarray(trigamma(root + 0.5)) / (2.0 * root))


def phi_s_symbol(N, s, lam):
    """``Gamma(1/2 + s + r) / Gamma(1/2 - s + r)`` with ``r = sqrt(lam + ((N-1)/2)^2)``.

    Requires ``0 < s < 1/2`` so that both gamma arguments stay positive.
    """
    N = _check_dim(N)
    s = _check_order(s)
    if s >= 0.5:
        raise ValueError("the fractional symbol is supported for 0 < s < 1/2")
    root = _symbol_root(N, lam)
    return _out(gamma_ratio(0.5 + s + root, 0.5 - s + root))


def eigentable(N, max_degree):
    """:class:`EigenvalueRecord` for every degree ``0..max_degree``."""
    return [lb_eigenvalue(N, i) for i in range(max_degree + 1)]
