"""
Polynomials, patches and bounding polygons
==========================================

A system is a tensor-product polynomial with 2-vector coefficients, stored
as an ``(m+1, n+1, 2)`` array in one of three bases. This script evaluates
one, restricts it to a sub-patch, and shows the bounding polygon that lets
the solver throw away patches without zeros.
"""

import numpy as np

from kts import Patch, TensorPoly, evaluate, reparametrize
from kts.bounding import bounding_polygon, contains_origin, gamma, theta
from kts.polybasis import to_local

# The same map (u, v) -> (u^2 - .25, v - .8) written in the power basis.
f = TensorPoly("power", [[(-0.25, -0.8), (0, 1)],
                         [(0, 0), (0, 0)],
                         [(1, 0), (0, 0)]])
print(f, "at (.5, .8):", evaluate(f, (0.5, 0.8)))

# Evaluation is vectorised over any leading shape.
grid = np.stack(np.meshgrid(np.linspace(0, 1, 3), np.linspace(0, 1, 3), indexing="ij"), axis=-1)
print(evaluate(f, grid).shape)

###############################################################################
# Reparametrization
# -----------------
# Restricting ``f`` to a patch gives a polynomial of the same degree over
# the basis's natural square ([-1, 1] for power and Chebyshev, [0, 1] for
# Bernstein). Both sides agree point for point.
patch = Patch((0.75, 0.75), 0.25)
g = reparametrize(f, patch)
x = np.array([0.6, 0.9])
print(evaluate(f, x), evaluate(g, to_local(f.basis, patch, x)))

###############################################################################
# Bounding polygons
# -----------------
# For the power basis the polygon is a zonogon built from the coefficients.
# If it misses the origin, the patch cannot hold a zero.
for c in [(0.25, 0.25), (0.5, 0.75), (0.75, 0.75)]:
    p = Patch(c, 0.25)
    poly = bounding_polygon(reparametrize(f, p))
    print(c, "vertices:", len(poly), "may hold a zero:", contains_origin(poly))

# How loose the polygon may be is measured by theta, which sets the size of
# the Kantorovich test domain through gamma(theta).
for basis in ("bernstein", "chebyshev", "power"):
    th = theta(basis, 2, 2)
    print(f"{basis:10s} theta={th:8.1f} gamma={gamma(th):.6f}")
