"""
Intersecting a line with a surface patch
========================================

A line ``p + t d`` meets a surface ``S(u, v)`` where two of the three
coordinates agree after eliminating ``t``. That leaves a 2x2 system in
``(u, v)``, which the subdivision solver handles; ``t`` is read off
afterwards.
"""

import numpy as np

from kts import Line3, TensorPoly, intersect, reduce

rng = np.random.default_rng(0)
surface = TensorPoly("bernstein", rng.standard_normal((4, 4, 3)))  # a bicubic patch

# A line through a known surface point, in a random direction.
uv_true = np.array([0.3, 0.6])
d = rng.standard_normal(3)
line = Line3(surface(uv_true) - 2.0 * d, d)

for hit in intersect(surface, line):
    print(f"uv={hit.uv} t={hit.t:.6f} residual={hit.residual:.1e}")

# The reduced system is an ordinary 2-vector polynomial in the same basis.
g = reduce(surface, line)
print(g, g(uv_true))

# With ray=True only t >= 0 is kept.
print(len(intersect(surface, line, ray=True)), "hits on the ray")
