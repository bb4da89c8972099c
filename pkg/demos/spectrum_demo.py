"""Log operator on the sphere: eigenvalue table and a quadrature check.

Prints ``2 psi(i + N/2)`` next to the value measured by applying the
singular integral to a zonal harmonic at a few random points.

    python demos/spectrum_demo.py
"""

import numpy as np

from logconf.geometry import make_rng, random_sphere_points
from logconf.harmonics import eigentable, zonal_harmonic
from logconf.operators import p_log_sphere

N = 2
rng = make_rng(0)
pts = random_sphere_points(N, 4, rng)

print(f"N = {N}")
print(f"{'i':>2} {'b_i':>5} {'c_i':>5} {'symbol':>12} {'measured':>12}")
for rec in eigentable(N, 5):
    Y = zonal_harmonic(N, rec.degree)
    vals = np.asarray(Y(pts))
    k = int(np.argmax(np.abs(vals)))
    measured = float(p_log_sphere(Y, pts[k]).value) / vals[k]
    print(f"{rec.degree:>2} {rec.b:>5} {rec.c:>5} {rec.phi_log:>12.8f} {measured:>12.8f}")
