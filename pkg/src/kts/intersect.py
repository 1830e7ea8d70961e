"""Line / parametric-surface intersection through the 2x2 reduction."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .driver import SolveConfig, SolveResult, solve
from .errors import BudgetExhausted, ZeroDirection
from .polybasis import TensorPoly, evaluate, linear_combine

__all__ = ["Line3", "Surface3", "Intersection", "pivot_axis", "reduce", "recover_t",
           "intersect", "intersect_detailed"]

RESIDUAL_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Line3:
    """The line ``{p + t d : t real}``."""

    p: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float).reshape(3)
        d = np.array(self.d, dtype=float).reshape(3)
        if not np.max(np.abs(d)) > 0:
            raise ZeroDirection("line direction must be nonzero")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", d)

    def at(self, t: float) -> np.ndarray:
        return self.p + t * self.d


@dataclass(frozen=True)
class Surface3:
    poly: TensorPoly

    def __post_init__(self):
        if self.poly.dim != 3:
            raise ValueError(f"surface coefficients must be 3-vectors, got d={self.poly.dim}")
        if self.poly.m < 1 or self.poly.n < 1:
            raise ValueError("surface must have degree at least 1 in u and v")


@dataclass(frozen=True)
class Intersection:
    uv: np.ndarray
    t: float
    point: np.ndarray
    residual: float


def _poly(surface: Union[Surface3, TensorPoly]) -> TensorPoly:
    return surface.poly if isinstance(surface, Surface3) else Surface3(surface).poly


def pivot_axis(line: Line3) -> int:
    """Index of the largest direction component; ties go to the lowest index."""
    return int(np.argmax(np.abs(line.d)))


def reduce(surface: Union[Surface3, TensorPoly], line: Line3) -> TensorPoly:
    """Eliminate ``t`` using the pivot row.

    With pivot ``k`` and the other two axes ``j``, the reduced equations are
    ``d_k (f_j - p_j) - d_j (f_k - p_k) = 0``, assembled coefficientwise.
    """
    f = _poly(surface)
    k = pivot_axis(line)
    p, d = line.p, line.d
    rows = [j for j in range(3) if j != k]
    A = np.zeros((2, 3))
    b = np.zeros(2)
    for r, j in enumerate(rows):
        A[r, j] = d[k]
        A[r, k] = -d[j]
        b[r] = -(d[k] * p[j] - d[j] * p[k])
    return linear_combine(f, A, b)


def recover_t(surface: Union[Surface3, TensorPoly], line: Line3, uv) -> float:
    """Line parameter from the pivot row: ``t = (f_k(u,v) - p_k) / d_k``."""
    f = _poly(surface)
    k = pivot_axis(line)
    return float((evaluate(f, uv)[k] - line.p[k]) / line.d[k])


def _lift(f: TensorPoly, line: Line3, zeros, ray: bool) -> list[Intersection]:
    out = []
    for uv in zeros:
        uv = np.asarray(uv, dtype=float)
        t = recover_t(f, line, uv)
        point = line.at(t)
        residual = float(np.max(np.abs(evaluate(f, uv) - point)))
        if residual <= RESIDUAL_TOL and (not ray or t >= 0.0):
            out.append(Intersection(uv, t, point, residual))
    out.sort(key=lambda s: s.t)
    return out


def intersect_detailed(surface, line: Line3, config: Optional[SolveConfig] = None,
                       ray: bool = False) -> tuple[list[Intersection], SolveResult]:
    """Like :func:`intersect` but also returns the underlying solve result.

    On :class:`BudgetExhausted` the exception is re-raised with an extra
    ``intersections`` attribute holding what was lifted from the partial result.
    """
    f = _poly(surface)
    system = reduce(f, line)
    try:
        result = solve(system, config)
    except BudgetExhausted as exc:
        exc.intersections = _lift(f, line, exc.result.zeros, ray)
        raise
    return _lift(f, line, result.zeros, ray), result


def intersect(surface, line: Line3, config: Optional[SolveConfig] = None,
              ray: bool = False) -> list[Intersection]:
    """All intersections of ``line`` with the surface patch over the unit square, sorted by ``t``.

    ``ray=True`` keeps only ``t >= 0``.
    """
    return intersect_detailed(surface, line, config, ray)[0]
