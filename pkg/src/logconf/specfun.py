"""Gamma-family special functions on the positive real axis.

All functions are vectorised over numpy arrays. The algorithm is the usual
one: shift the argument upward with the functional recurrence until it
exceeds ``_SHIFT`` and then sum the Stirling/Bernoulli asymptotic series,
truncated where the next term falls below double precision.
"""

import math

import numpy as np

_SHIFT = 10.0
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)

# B_{2k} / (2k (2k-1)) for the log-gamma series, k = 1..8
_LOG_GAMMA_COEFFS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
# B_{2k} / (2k) for the digamma series
_DIGAMMA_COEFFS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)
# B_{2k} for the trigamma series
_TRIGAMMA_COEFFS = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)


class DomainError(ValueError):
    """Raised when an argument lies outside the supported domain."""


def _positive(x, name):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError(f"{name} requires finite x > 0")
    return arr


def _shift_counts(x):
    return np.clip(np.ceil(_SHIFT - x), 0, None).astype(int)


def _series(coeffs, inv, inv_step):
    # Horner evaluation of sum_k coeffs[k] * inv * inv_step**k
    acc = np.zeros_like(inv)
    for c in reversed(coeffs):
        acc = acc * inv_step + c
    return acc * inv


def _wrap(out, x):
    return out.item() if np.ndim(x) == 0 else out


def log_gamma(x):
    """Natural logarithm of the gamma function for ``x > 0``.

    Parameters
    ----------
    x : float or array_like
        Positive arguments.

    Returns
    -------
    float or ndarray
        ``ln Gamma(x)``.

    Raises
    ------
    DomainError
        If any ``x <= 0`` or is not finite.
    """
    arr = _positive(x, "log_gamma")
    n = _shift_counts(arr)
    y = arr.copy()
    log_prod = np.zeros_like(arr)
    for k in range(int(n.max(initial=0))):
        active = n > k
        log_prod[active] += np.log(y[active])
        y[active] += 1.0
    inv = 1.0 / y
    stirling = (y - 0.5) * np.log(y) - y + _HALF_LOG_TWO_PI
    out = stirling + _series(_LOG_GAMMA_COEFFS, inv, inv * inv) - log_prod
    return _wrap(out, x)


def digamma(x):
    """Logarithmic derivative of the gamma function for ``x > 0``."""
    arr = _positive(x, "digamma")
    n = _shift_counts(arr)
    y = arr.copy()
    acc = np.zeros_like(arr)
    for k in range(int(n.max(initial=0))):
        active = n > k
        acc[active] += 1.0 / y[active]
        y[active] += 1.0
    inv = 1.0 / y
    inv2 = inv * inv
    out = np.log(y) - 0.5 * inv - _series(_DIGAMMA_COEFFS, inv2, inv2) - acc
    return _wrap(out, x)


def trigamma(x):
    """Derivative of :func:`digamma` for ``x > 0``."""
    arr = _positive(x, "trigamma")
    n = _shift_counts(arr)
    y = arr.copy()
    acc = np.zeros_like(arr)
    for k in range(int(n.max(initial=0))):
        active = n > k
        acc[active] += 1.0 / (y[active] * y[active])
        y[active] += 1.0
    inv = 1.0 / y
    inv2 = inv * inv
    out = inv + 0.5 * inv2 + _series(_TRIGAMMA_COEFFS, inv * inv2, inv2) + acc
    return _wrap(out, x)


def _is_pole(arr):
    return (arr <= 0.0) & (arr == np.round(arr))


def gamma(x):
    """Gamma function on the real line minus the non-positive integers.

    Negative non-integer arguments are handled with the reflection formula
    ``Gamma(x) Gamma(1 - x) = pi / sin(pi x)``.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(_is_pole(arr)):
        raise DomainError("gamma is undefined at non-positive integers")
    out = np.empty_like(arr)
    pos = arr > 0.0
    out[pos] = np.exp(log_gamma(arr[pos]))
    neg = ~pos
    if np.any(neg):
        xn = arr[neg]
        out[neg] = np.pi / (np.sin(np.pi * xn) * np.exp(log_gamma(1.0 - xn)))
    return _wrap(out, x)


def rgamma(x):
    """Reciprocal gamma function, entire, equal to 0 at the poles of gamma."""
    arr = np.asarray(x, dtype=float)
    out = np.zeros_like(arr)
    ok = ~_is_pole(arr)
    out[ok] = 1.0 / np.asarray(gamma(arr[ok]))
    return _wrap(out, x)


def gamma_ratio(a, b):
    """``Gamma(a) / Gamma(b)`` evaluated without overflow when both are positive.

    ``b`` may be a pole of gamma, in which case the ratio is 0.
    """
    a_arr, b_arr = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float))
    if np.any(_is_pole(a_arr)):
        raise DomainError("gamma_ratio numerator has a pole")
    out = np.empty(a_arr.shape)
    both = (a_arr > 0.0) & (b_arr > 0.0)
    out[both] = np.exp(log_gamma(a_arr[both]) - log_gamma(b_arr[both]))
    rest = ~both
    if np.any(rest):
        out[rest] = np.asarray(gamma(a_arr[rest])) * np.asarray(rgamma(b_arr[rest]))
    return out.item() if out.ndim == 0 else out
