"""Seeded family of smooth test fields used by the verification suites.

Each item pairs a sphere field with its flat image under the conformal
transfer: zonal harmonics of degree 0 to 4 about the north pole, and
Gaussian bumps in ``R^N`` with seeded centres and widths.
"""

from dataclasses import dataclass

import numpy as np

from .constants import _check_dim
from .geometry import PlaneField, SphereField, iota_pull, iota_push, make_rng
from .harmonics import zonal_harmonic

HARMONIC_DEGREES = (0, 1, 2, 3, 4)
N_BUMPS = 3


@dataclass(frozen=True)
class CorpusItem:
    """One test function seen on both sides of the transfer."""

    name: str
    sphere: SphereField
    plane: PlaneField

    def describe(self):
        p = self.plane
        return {
            "name": self.name,
            "center": p.center.tolist(),
            "scale": p.scale,
            "radial": p.radial,
        }


def gaussian_bump(N, center, width):
    """``exp(-|x - c|^2 / (2 w^2))``, radial about ``c``."""
    c = np.asarray(center, dtype=float)
    w2 = 2.0 * float(width) ** 2

    def func(x):
        d = x - c
        return np.exp(-np.sum(d * d, axis=-1) / w2)

    return PlaneField(func, N, center=c, radial=True, scale=float(width), name=f"bump{np.round(c, 3).tolist()}")


def harmonic_items(N, degrees=HARMONIC_DEGREES):
    items = []
    for i in degrees:
        u = zonal_harmonic(N, i)
        items.append(CorpusItem(f"Y{i}", u, iota_push(u)))
    return items


def bump_items(N, seed, count=N_BUMPS):
    """Bumps with centres in ``|x| <= 1`` and widths in ``[0.8, 1.2]``."""
    rng = make_rng(seed)
    items = []
    for k in range(count):
        c = rng.uniform(-1.0, 1.0, N) / np.sqrt(N)
        w = rng.uniform(0.8, 1.2)
        v = gaussian_bump(N, c, w)
        items.append(CorpusItem(f"bump{k}", iota_pull(v), v))
    return items


def corpus(N, seed=0):
    """The full corpus for dimension ``N``: harmonics first, then bumps."""
    N = _check_dim(N)
    return harmonic_items(N) + bump_items(N, seed)


def mixed_harmonic(N, coefficients=(0.5, 1.0, -0.7, 0.4)):
    """A finite sum of zonal harmonics about the north pole."""
    u = None
    for i, a in enumerate(coefficients):
        term = zonal_harmonic(N, i) * a
        u = term if u is None else u + term
    return u
