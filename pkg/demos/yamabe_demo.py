"""Bubble solutions of the logarithmic Yamabe equation on the plane.

Evaluates the residual of translated and dilated bubbles at random points
and shows the sphere constant solution for a few values of ``mu``.

    python demos/yamabe_demo.py
"""

import numpy as np

from logconf.constants import q_curvature
from logconf.geometry import make_rng, random_ball_points, random_sphere_points
from logconf.yamabe import bubble_field, constant_field, residual_y1, residual_y2

rng = make_rng(1)
for N in (1, 2, 3):
    pts = random_ball_points(N, 10, 4.0, rng)
    for mu, t in [(0.0, 1.0), (q_curvature(N), 0.5), (-1.0, 2.0)]:
        v = bubble_field(N, t, np.full(N, 0.25), mu)
        rep = residual_y2(v, mu, pts)
        print(f"N={N} mu={mu:+.4f} t={t:.1f}: bubble max residual {rep.max_abs:.2e}")
    z = random_sphere_points(N, 10, rng)
    rep = residual_y1(constant_field(N, 0.7), 0.7, z)
    print(f"N={N} constant solution (mu=0.7): max residual {rep.max_abs:.2e}")
