"""Dimension-dependent constants in closed form.

Everything here is a closed form in gamma-family functions of the sphere
dimension ``N`` and, for the fractional family, the order ``s``.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from .specfun import digamma, gamma_ratio, log_gamma

EULER_GAMMA = 0.57721566490153286060651209008240243


def _check_dim(N):
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 1:
        raise ValueError(f"dimension must be an integer >= 1, got {N!r}")
    return int(N)


def _check_order(s):
    s = float(s)
    if not 0.0 < s < 1.0:
        raise ValueError(f"order s must lie in (0, 1), got {s}")
    return s


def sphere_area(N):
    """Surface measure ``|S^N|`` of the unit sphere in ``R^(N+1)``.

    ``N = 0`` gives 2, the counting measure of the two-point sphere.
    """
    if N == 0:
        return 2.0
    N = _check_dim(N)
    return 2.0 * math.pi ** ((N + 1) / 2.0) / math.exp(log_gamma((N + 1) / 2.0))


def ball_volume(N):
    """Lebesgue measure ``|B_1|`` of the unit ball in ``R^N``."""
    N = _check_dim(N)
    return math.pi ** (N / 2.0) / math.exp(log_gamma(N / 2.0 + 1.0))


def kernel_constant(N):
    """Normalisation ``c_N = pi^(-N/2) Gamma(N/2)`` of the log kernel."""
    N = _check_dim(N)
    return math.pi ** (-N / 2.0) * math.exp(log_gamma(N / 2.0))


def q_curvature(N):
    """Zeroth-order coefficient ``A_N = 2 psi(N/2)`` of the conformal operator.

    This is the constant the operator returns on constant functions.
    """
    N = _check_dim(N)
    return 2.0 * digamma(N / 2.0)


def rho_constant(N):
    """Zeroth-order coefficient ``2 ln 2 + psi(N/2) - gamma_E`` of the flat operator."""
    N = _check_dim(N)
    return 2.0 * math.log(2.0) + digamma(N / 2.0) - EULER_GAMMA


def pitt_constant(N):
    """Sharp constant ``2 psi(N/4) + 2 ln 2`` of the logarithmic Pitt inequality."""
    N = _check_dim(N)
    return 2.0 * digamma(N / 4.0) + 2.0 * math.log(2.0)


def kappa_constant(N):
    """Shift ``|2 psi(N/4)| + 1`` making the sphere energy norm coercive."""
    N = _check_dim(N)
    return abs(2.0 * digamma(N / 4.0)) + 1.0


def chen_zhou_constant(N):
    """``gamma_N = exp((N/2) psi(N/2))``, the factor making the standard bubble a ``mu = 0`` solution.

    Equal to ``exp(N A_N / 4)``.
    """
    N = _check_dim(N)
    return math.exp(0.5 * N * digamma(N / 2.0))


def beckner_constant(N):
    """Constant ``4 pi^(N/2) / (N Gamma(N/2))`` of the sphere log-Sobolev inequality."""
    N = _check_dim(N)
    return 4.0 * math.pi ** (N / 2.0) / (N * math.exp(log_gamma(N / 2.0)))


def frank_consistency(N):
    """``C_N N c_N``, which equals 4 for every ``N``."""
    return beckner_constant(N) * N * kernel_constant(N)


def frac_kernel_constant(N, s):
    """Kernel normalisation of the order-``2s`` conformal operator on ``S^N``."""
    N = _check_dim(N)
    s = _check_order(s)
    return (
        4.0**s
        * math.pi ** (-N / 2.0)
        * s
        * (1.0 - s)
        * math.exp(log_gamma(N / 2.0 + s) - log_gamma(2.0 - s))
    )


def frac_zeroth_order(N, s):
    """``Gamma(N/2 + s) / Gamma(N/2 - s)``, the value of the order-``2s`` operator on 1.

    Positive whenever ``s < N/2``; for ``N = 1`` it vanishes at ``s = 1/2``
    and is negative for ``s`` in ``(1/2, 1)``.
    """
    N = _check_dim(N)
    s = _check_order(s)
    return gamma_ratio(N / 2.0 + s, N / 2.0 - s)


def frac_constants(N, s):
    """Return ``(kernel constant, zeroth-order constant)`` of the fractional family."""
    return frac_kernel_constant(N, s), frac_zeroth_order(N, s)


@dataclass(frozen=True)
class DimensionConstants:
    """All scalar constants attached to one dimension."""

    dim: int
    sphere_area: float
    ball_volume: float
    kernel_constant: float
    q_curvature: float
    rho: float
    pitt: float
    kappa: float
    chen_zhou: float
    beckner: float

    def as_dict(self):
        return asdict(self)


FORMULAS = {
    "sphere_area": "2 pi^((N+1)/2) / Gamma((N+1)/2)",
    "ball_volume": "pi^(N/2) / Gamma(N/2 + 1)",
    "kernel_constant": "pi^(-N/2) Gamma(N/2)",
    "q_curvature": "2 psi(N/2)",
    "rho": "2 ln 2 + psi(N/2) - gamma_E",
    "pitt": "2 psi(N/4) + 2 ln 2",
    "kappa": "|2 psi(N/4)| + 1",
    "chen_zhou": "exp((N/2) psi(N/2))",
    "beckner": "4 pi^(N/2) / (N Gamma(N/2))",
    "frac_kernel_constant": "4^s pi^(-N/2) Gamma(N/2 + s) s (1 - s) / Gamma(2 - s)",
    "frac_zeroth_order": "Gamma(N/2 + s) / Gamma(N/2 - s)",
}


def log_constants(N):
    """Bundle every dimension constant into a :class:`DimensionConstants`."""
    N = _check_dim(N)
    return DimensionConstants(
        dim=N,
        sphere_area=sphere_area(N),
        ball_volume=ball_volume(N),
        kernel_constant=kernel_constant(N),
        q_curvature=q_curvature(N),
        rho=rho_constant(N),
        pitt=pitt_constant(N),
        kappa=kappa_constant(N),
        chen_zhou=chen_zhou_constant(N),
        beckner=beckner_constant(N),
    )
