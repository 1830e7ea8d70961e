"""
Finding every zero in the unit square
=====================================

The solver subdivides the unit square, discarding patches whose bounding
polygon misses the origin and launching Newton only where Kantorovich's
theorem guarantees quadratic convergence. Each zero found gets a safe
region in which it is provably the only zero.
"""

import collections

import numpy as np

from kts import SolveConfig, TensorPoly, solve
from kts.verify import brute_zeros, reference_instance

f = reference_instance()  # a biquadratic Bernstein system
result = solve(f)

for z in result.zeros:
    print("zero", z, "residual", np.max(np.abs(f(z))))
print("distance between zeros:", np.max(np.abs(result.zeros[0] - result.zeros[1])))
print("patches examined:", result.stats.patches_examined,
      "smallest width:", result.stats.smallest_width,
      "complete:", result.complete)

###############################################################################
# What happened to each patch
# ---------------------------
# The trace records the outcome of every patch in processing order.
print(collections.Counter(rec.outcome for rec in result.trace))
for rec in result.trace:
    if rec.outcome == "pass":
        r = rec.report
        print(f"pass at {rec.center} r={rec.radius}: eta={r.eta:.2e} h={r.h:.3f} "
              f"newton iterations={rec.newton.iterations}")

###############################################################################
# Safe regions
# ------------
for s in result.safe_regions:
    print("safe region around", s.zero, "radius", round(s.rho_star, 4))

###############################################################################
# Cross-check against the brute-force oracle
# ------------------------------------------
print("oracle:", brute_zeros(f))

###############################################################################
# Systems the solver cannot settle
# --------------------------------
# A double zero never passes the test; its neighbourhood is returned as
# unresolved patches once they shrink below the minimum width.
double_zero = TensorPoly("power", [[(0.09, -0.5), (0, 1)],  # ((u - .3)^2, v - .5)
                                   [(-0.6, 0), (0, 0)],
                                   [(1, 0), (0, 0)]])
double = solve(double_zero, SolveConfig(min_patch_width=1e-3))
print("complete:", double.complete, "unresolved patches:", len(double.unresolved))
