# # Following the roots of t*p + (1-t)*q
#
# Roots are isolated by exact bisection at each grid point; partial sums
# S_k(t) come with rational enclosures.

import math

import numpy as np

from interlace_majorize import PolyPair
from interlace_majorize.homotopy import root_velocity, strong_majorization_empirical, track

# ## The square root example

pair = PolyPair.from_roots([2, -2], [1, -1])
b = track(pair, grid_size=9)
for t, row in zip(b.t_grid, b.roots_mid()):
    print(f"t={float(t):.4f}  lambda_1={row[0]:.15f}  sqrt(1+3t)={math.sqrt(1 + 3 * float(t)):.15f}")

[str(v) for v in b.monotone_verdicts]

# ## A pair whose S_2 overshoots

pair = PolyPair.from_roots([5, 1, -1, -5], [4, 2, -2, -4])
b = track(pair, grid_size=512)
S = b.S_mid()
g = int(np.argmax(S[:, 1]))
print("max S_2 =", S[g, 1], "at t =", float(b.t_grid[g]))
print("S_2 at t=0 and t=1:", S[0, 1], S[-1, 1])
for v in b.monotone_verdicts:
    print(v.k, v, "violation steps:", len(v.violations))

# Grid points added next to the ends and around unclear steps:

b.refined_points

# ## Root velocity

v = root_velocity(PolyPair.from_roots([2, -2], [1, -1]), "1/2", 1)
print(float(v.value), 3 / (2 * math.sqrt(2.5)), float(v.error))
[(float(f.lo), float(f.hi)) for f in v.forms]

# ## One-call empirical check

emp = strong_majorization_empirical(PolyPair.from_roots([3, 0, -3], [2, 0, -2]), 128)
emp.overall, emp.strict
