"""Pure Newton iteration for 2x2 polynomial systems."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bounding import gamma, theta
from .errors import SingularJacobian
from .polybasis import TensorPoly, evaluate, jacobian

__all__ = ["NewtonOutcome", "newton_solve", "solve_2x2"]

SINGULAR_RTOL = 1e-14


def solve_2x2(J: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve ``J x = rhs`` by Cramer's rule with a scale-invariant pivot check.

    Raises :class:`SingularJacobian` when ``|det J|`` is at most
    ``1e-14`` times the product of the row norms.
    """
    a, b = J[0]
    c, d = J[1]
    det = a * d - b * c
    scale = (abs(a) + abs(b)) * (abs(c) + abs(d))
    if not np.isfinite(det) or abs(det) <= SINGULAR_RTOL * scale or scale == 0.0:
        raise SingularJacobian(f"Jacobian {J.tolist()} is numerically singular")
    return np.array([d * rhs[0] - b * rhs[1], a * rhs[1] - c * rhs[0]]) / det


def inverse_2x2(J: np.ndarray) -> np.ndarray:
    """Inverse of a 2x2 matrix, with the same singularity rule as :func:`solve_2x2`."""
    return np.column_stack([solve_2x2(J, np.array([1.0, 0.0])),
                            solve_2x2(J, np.array([0.0, 1.0]))])


@dataclass(frozen=True)
class NewtonOutcome:
    zero: np.ndarray
    iterations: int
    residual: float
    converged: bool
    status: str
    iterates: tuple = field(default=(), repr=False)


def newton_solve(f: TensorPoly, x0, step_tol: float = 1e-12, max_iter: int = 50,
                 residual_tol: Optional[float] = None,
                 bound: Optional[float] = None) -> NewtonOutcome:
    """Run undamped Newton from ``x0``.

    Stops when the infinity norm of the step is at most ``step_tol`` or when the
    step stops shrinking after falling below 1e-10 (the rounding floor). The
    run is abandoned as diverged once an iterate leaves the box of half-width
    ``bound``, by default ``10 (1 + 2 gamma(theta))`` for ``f``'s basis.
    """
    if bound is None:
        bound = 10.0 * (1.0 + 2.0 * gamma(theta(f.basis, f.m, f.n)))
    x = np.array(x0, dtype=float)
    iterates = [x.copy()]
    status = "max_iter"
    prev_step = np.inf
    k = 0
    while k < max_iter:
        fx = evaluate(f, x)
        try:
            step = solve_2x2(jacobian(f, x), fx)
        except SingularJacobian:
            status = "singular"
            break
        x = x - step
        k += 1
        iterates.append(x.copy())
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > bound:
            status = "diverged"
            break
        size = float(np.max(np.abs(step)))
        if size <= step_tol or (prev_step <= 1e-10 and size >= prev_step):
            status = "converged"
            break
        prev_step = size
    residual = float(np.max(np.abs(evaluate(f, x)))) if np.all(np.isfinite(x)) else np.inf
    converged = status == "converged" and (residual_tol is None or residual <= residual_tol)
    return NewtonOutcome(zero=x, iterations=k, residual=residual, converged=converged,
                         status=status, iterates=tuple(iterates))
