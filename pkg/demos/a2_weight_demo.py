"""Profile of the A2 weight ``H(r)`` and the scaled quantity ``N H(r)``.

    python demos/a2_weight_demo.py
"""

import numpy as np

from logconf.forms import a2_profile

grid = np.logspace(-3, 6, 10)
for N in (1, 2, 3):
    print(f"N = {N}")
    for r, H, NH in a2_profile(N, grid):
        print(f"  r = {r:9.3g}  H = {H:.6e}  N H = {NH:.6f}")
