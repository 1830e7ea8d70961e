"""Independent oracles and test fixtures.

``brute_zeros`` finds zeros by grid screening plus Newton, with no subdivision
or bounding polygons, so it can be checked against :func:`kts.driver.solve`.
``estimate_condition`` gives a sampled lower bound on the condition number;
complex zeros are never enumerated, so it is only ever a lower bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .bounding import gamma, theta as basis_theta
from .errors import KTSError, SingularJacobian
from .kanto import safe_region
from .newton import inverse_2x2, newton_solve
from .polybasis import BasisKind, TensorPoly, evaluate, jacobian

__all__ = [
    "ConditionEstimate",
    "brute_zeros",
    "estimate_condition",
    "fixture_nearest_zero",
    "fixture_illconditioned",
    "fixture_random",
    "reference_instance",
]

UNIT_BOX = ((0.0, 1.0), (0.0, 1.0))


def reference_instance() -> TensorPoly:
    """Biquadratic Bernstein system with two zeros in the unit square."""
    c = [[(1.2, .5), (-.6, -.6), (.1, 1.1)],
         [(-1.1, -.3), (.6, -2.3), (-2, -.1)],
         [(.6, 1.2), (-1.1, -1.2), (-.5, .4)]]
    return TensorPoly(BasisKind.BERNSTEIN, c)


def _op_norm(M: np.ndarray) -> np.ndarray:
    """Infinity operator norm (max absolute row sum) of stacked 2x2 matrices."""
    return np.max(np.sum(np.abs(M), axis=-1), axis=-1)


def _batched_newton(f: TensorPoly, X: np.ndarray, iters: int = 60) -> np.ndarray:
    X = X.copy()
    alive = np.ones(len(X), dtype=bool)
    for _ in range(iters):
        if not alive.any():
            break
        F = evaluate(f, X[alive])
        J = jacobian(f, X[alive])
        det = J[:, 0, 0] * J[:, 1, 1] - J[:, 0, 1] * J[:, 1, 0]
        ok = np.abs(det) > 1e-14 * _op_norm(J) ** 2
        safe = np.where(ok, det, 1.0)
        step = np.stack([(J[:, 1, 1] * F[:, 0] - J[:, 0, 1] * F[:, 1]) / safe,
                         (J[:, 0, 0] * F[:, 1] - J[:, 1, 0] * F[:, 0]) / safe], axis=1)
        idx = np.flatnonzero(alive)
        X[idx] -= np.where(ok[:, None], step, 0.0)
        bad = ~ok | ~np.all(np.isfinite(X[idx]), axis=1) | (np.max(np.abs(X[idx]), axis=1) > 1e3)
        small = np.max(np.abs(step), axis=1) <= 1e-13
        alive[idx[bad | small]] = False
        X[idx[bad]] = np.nan
    return X


def brute_zeros(f: TensorPoly, grid_n: int = 256, domain=UNIT_BOX,
                dedupe_tol: float = 1e-6, residual_tol: float = 1e-10) -> list[np.ndarray]:
    """Zeros of ``f`` in ``domain`` by grid screening and Newton.

    ``f`` is sampled on a ``(grid_n+1)^2`` grid. Newton starts from the center
    of every cell whose smallest corner value is within a Lipschitz-scaled
    threshold of zero (a cell holding a zero always qualifies). Reliable for
    degree <= 4 at ``grid_n >= 256``; coarser grids may miss close zeros.
    """
    if grid_n < 32:
        raise ValueError("grid_n must be at least 32")
    (u0, u1), (v0, v1) = domain
    us = np.linspace(u0, u1, grid_n + 1)
    vs = np.linspace(v0, v1, grid_n + 1)
    P = np.stack(np.meshgrid(us, vs, indexing="ij"), axis=-1)
    size = np.max(np.abs(evaluate(f, P)), axis=-1)
    lip = float(np.max(_op_norm(jacobian(f, P))))
    cell = max(us[1] - us[0], vs[1] - vs[0])
    corner_min = np.minimum.reduce([size[:-1, :-1], size[1:, :-1], size[:-1, 1:], size[1:, 1:]])
    threshold = 2.0 * lip * cell + 1e-12
    iu, iv = np.nonzero(corner_min <= threshold)
    if len(iu) == 0:
        return []
    starts = np.stack([0.5 * (us[iu] + us[iu + 1]), 0.5 * (vs[iv] + vs[iv + 1])], axis=1)
    ends = _batched_newton(f, starts)
    ends = ends[np.all(np.isfinite(ends), axis=1)]
    near = ((ends[:, 0] >= u0 - 1e-6) & (ends[:, 0] <= u1 + 1e-6)
            & (ends[:, 1] >= v0 - 1e-6) & (ends[:, 1] <= v1 + 1e-6))
    ends = ends[near]
    ends = ends[np.max(np.abs(evaluate(f, ends)), axis=1) <= 1e3 * residual_tol] if len(ends) else ends

    found: list[np.ndarray] = []
    tried: list[np.ndarray] = []
    for x in ends:
        if any(np.max(np.abs(x - z)) <= dedupe_tol for z in tried):
            continue
        tried.append(x)
        polished = newton_solve(f, x, step_tol=1e-14, max_iter=20)
        z = polished.zero
        if not np.all(np.isfinite(z)) or polished.residual > residual_tol:
            continue
        if not (u0 - 1e-9 <= z[0] <= u1 + 1e-9 and v0 - 1e-9 <= z[1] <= v1 + 1e-9):
            continue
        if any(np.max(np.abs(z - w)) <= dedupe_tol for w in found):
            continue
        found.append(z)
    found.sort(key=lambda z: (z[0], z[1]))
    return found


@dataclass(frozen=True)
class ConditionEstimate:
    omega_f_lb: float
    jacobian_ratio_lb: float
    cond_lb: float
    zeros_used: list = field(default_factory=list)
    is_lower_bound: bool = True


def estimate_condition(f: TensorPoly, zeros: Sequence, sample_n: int = 2000,
                       seed: int = 0, theta: Optional[float] = None) -> ConditionEstimate:
    """Sampled lower bound on the condition number of ``f``.

    ``jacobian_ratio_lb`` maximizes ``||f'(x*)^{-1} f'(y)||`` over the given
    zeros and ``sample_n`` points ``y`` of the unit square. ``omega_f_lb``
    maximizes difference quotients ``||f'(x*)^{-1}(f'(y) - f'(z))|| / ||y - z||``
    over pairs in the extended square (zeros inside the unit square) and over
    pairs in each zero's computed safe region, whose radius never exceeds the
    exact one. Each stream of samples has its own seed, so raising
    ``sample_n`` only adds samples and never lowers the bound.
    """
    th = basis_theta(f.basis, f.m, f.n) if theta is None else float(theta)
    g = gamma(th)
    zeros = [np.asarray(z, dtype=float) for z in zeros]
    streams = np.random.SeedSequence(seed).spawn(4)
    ys = np.random.default_rng(streams[0]).random((sample_n, 2))
    pa = np.random.default_rng(streams[1]).uniform(-g, 1.0 + g, (sample_n, 2))
    pb = np.random.default_rng(streams[2]).uniform(-g, 1.0 + g, (sample_n, 2))
    ball = np.random.default_rng(streams[3]).uniform(-1.0, 1.0, (sample_n, 2, 2))

    Jy = jacobian(f, ys)
    Ja, Jb = jacobian(f, pa), jacobian(f, pb)
    gap = np.max(np.abs(pa - pb), axis=1)
    ratio_lb = 0.0
    omega_lb = 0.0
    for z in zeros:
        try:
            Jinv = inverse_2x2(jacobian(f, z))
        except SingularJacobian:
            raise
        ratio_lb = max(ratio_lb, float(np.max(_op_norm(Jinv @ Jy))))
        if np.all(z >= 0.0) and np.all(z <= 1.0):
            q = _op_norm(Jinv @ (Ja - Jb)) / np.where(gap > 0, gap, np.inf)
            omega_lb = max(omega_lb, float(np.max(q)))
        try:
            rho = safe_region(f, z, th, residual_tol=1e-8).rho_star
        except (KTSError, ValueError):
            continue
        ya, yb = z + rho * ball[:, 0], z + rho * ball[:, 1]
        d = np.max(np.abs(ya - yb), axis=1)
        q = _op_norm(Jinv @ (jacobian(f, ya) - jacobian(f, yb))) / np.where(d > 0, d, np.inf)
        omega_lb = max(omega_lb, float(np.max(q)))
    return ConditionEstimate(omega_f_lb=omega_lb, jacobian_ratio_lb=ratio_lb,
                             cond_lb=max(omega_lb, ratio_lb), zeros_used=zeros)


def fixture_nearest_zero(x_star, alpha, omega: float) -> TensorPoly:
    """Quadratic-by-affine power-basis system with a zero at ``x_star``,
    Jacobian ``alpha`` there, and a second zero at distance ``2 / omega``."""
    us, vs = (float(x) for x in x_star)
    a1, a2, a3, a4 = np.asarray(alpha, dtype=float).reshape(4)
    det = a1 * a4 - a2 * a3
    if det == 0.0 or not np.isfinite(det):
        raise ValueError("alpha must be nonsingular")
    if not omega > 0:
        raise ValueError("omega must be positive")
    c = np.zeros((3, 3, 2))
    # Second row is a3 (u - us) + a4 (v - vs) in both branches.
    c[0, 0, 1] = -a3 * us - a4 * vs
    c[1, 0, 1] = a3
    c[0, 1, 1] = a4
    c[0, 0, 0] = -a1 * us - a2 * vs
    c[1, 0, 0] = a1
    c[0, 1, 0] = a2
    if abs(a4) >= abs(a3):
        k = omega * det / (2.0 * a4)  # k (u - us)^2
        c[2, 0, 0] += k
        c[1, 0, 0] += -2.0 * k * us
        c[0, 0, 0] += k * us * us
    else:
        k = omega * det / (2.0 * a3)  # k (v - vs)^2
        c[0, 2, 0] += k
        c[0, 1, 0] += -2.0 * k * vs
        c[0, 0, 0] += k * vs * vs
    return TensorPoly(BasisKind.POWER, c)


def fixture_illconditioned(u0: float, v0: float, epsilon: float) -> TensorPoly:
    """Real and imaginary parts of ``(z - (u0 - eps - i eps)) (z - (u0 + eps - i eps))``.

    Real zeros sit at ``(u0 -+ eps, -eps)``, just below the unit square, so
    patches near ``(u0, 0)`` fail exclusion until their radius is ``O(eps)``.
    ``v0`` is the height of the probing patch center and must lie in [0, 1];
    it does not change the polynomial.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    if not 0.0 <= v0 <= 1.0:
        raise ValueError("v0 must lie in [0, 1]")
    e = float(epsilon)
    c = np.zeros((3, 3, 2))
    # u^2 - v^2 - 2 u0 u - 2 e v - 2 e^2 + u0^2
    c[2, 0, 0] = 1.0
    c[0, 2, 0] = -1.0
    c[1, 0, 0] = -2.0 * u0
    c[0, 1, 0] = -2.0 * e
    c[0, 0, 0] = u0 * u0 - 2.0 * e * e
    # 2 u v - 2 u0 v + 2 e u - 2 e u0
    c[1, 1, 1] = 2.0
    c[0, 1, 1] = -2.0 * u0
    c[1, 0, 1] = 2.0 * e
    c[0, 0, 1] = -2.0 * e * u0
    return TensorPoly(BasisKind.POWER, c)


def fixture_random(basis, m: int, n: int, seed: int, dim: int = 2) -> TensorPoly:
    """System with standard normal coefficients drawn from ``seed``."""
    rng = np.random.default_rng(seed)
    return TensorPoly(BasisKind.parse(basis), rng.standard_normal((m + 1, n + 1, dim)))
