"""Kantorovich-test subdivision solver for bivariate polynomial systems.

Finds every zero of a 2x2 polynomial system in the unit square, in the power,
Bernstein or Chebyshev basis, and intersects lines with polynomial surface
patches by reducing to such a system.
"""
from .bounding import bounding_polygon, contains_origin, gamma, scalar_range, theta
from .driver import SolveConfig, SolveResult, SolveStats, exclusion_test, solve
from .errors import BudgetExhausted, KTSError, NoConvergence, SingularJacobian, ZeroDirection
from .intersect import Intersection, Line3, Surface3, intersect, recover_t, reduce
from .kanto import KantorovichReport, SafeRegion, Verdict, kantorovich_test, lipschitz_bound, safe_region
from .newton import NewtonOutcome, newton_solve
from .polybasis import (BasisKind, Patch, TensorPoly, evaluate, jacobian, linear_combine,
                        partial_derivative, reparametrize)

__version__ = "0.1.0"

__all__ = [
    "BasisKind", "Patch", "TensorPoly", "evaluate", "jacobian", "linear_combine",
    "partial_derivative", "reparametrize",
    "bounding_polygon", "contains_origin", "gamma", "scalar_range", "theta",
    "KantorovichReport", "SafeRegion", "Verdict", "kantorovich_test", "lipschitz_bound", "safe_region",
    "NewtonOutcome", "newton_solve",
    "SolveConfig", "SolveResult", "SolveStats", "exclusion_test", "solve",
    "Intersection", "Line3", "Surface3", "intersect", "recover_t", "reduce",
    "BudgetExhausted", "KTSError", "NoConvergence", "SingularJacobian", "ZeroDirection",
]
