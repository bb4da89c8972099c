"""Pitt and Beckner margins for a few simple fields (takes about a minute).

    python demos/inequalities_demo.py
"""

import numpy as np

from logconf.corpus import gaussian_bump
from logconf.forms import beckner_gap, beckner_margin, pitt_margin, positivity_margin
from logconf.harmonics import zonal_harmonic
from logconf.yamabe import frank_field

N = 1
g = gaussian_bump(N, np.zeros(N), 1.0)
print(f"Gaussian, N={N}: Pitt margin {pitt_margin(g):.6f}, positivity margin {positivity_margin(g):.6f}")

u = zonal_harmonic(N, 2)
print(f"Y2, N={N}: Beckner margin {beckner_margin(u):.6f}")
for t in (0.0, 0.3, 0.6):
    theta = np.array([t, 0.0])
    print(f"frank field theta=({t}, 0): equality gap {beckner_gap(frank_field(theta)):.2e}")
