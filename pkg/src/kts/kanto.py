"""Kantorovich test, computable Lipschitz bound and safe regions.

Everything here is affine invariant: the system is always premultiplied by
``f'(x0)^{-1}`` before any quantity is measured.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import inf, sqrt
from typing import Optional

import numpy as np

from .bounding import gamma, scalar_range, theta as basis_theta
from .errors import NoConvergence, SingularJacobian
from .newton import inverse_2x2
from .polybasis import Patch, TensorPoly, evaluate, jacobian, linear_combine, reparametrize_box

__all__ = [
    "Verdict",
    "KantorovichReport",
    "SafeRegion",
    "extended_domain",
    "lipschitz_bound",
    "kantorovich_test",
    "safe_region",
]


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL_H = "fail_h"
    FAIL_DOMAIN = "fail_domain"
    SINGULAR_JACOBIAN = "singular_jacobian"


@dataclass(frozen=True)
class KantorovichReport:
    eta: float
    omega_hat: float
    h: float
    rho_minus: Optional[float]
    rho_plus: Optional[float]
    verdict: Verdict

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS


@dataclass(frozen=True)
class SafeRegion:
    """Ball ``B(zero, rho_star)`` in which ``zero`` is the only zero.

    ``omega_star = 2 / rho_star``; ``omega_hat`` is the computed Lipschitz bound
    over the ball, which never exceeds ``omega_star``. ``capped`` marks a search
    that hit the upper radius limit (nearly affine systems).
    """

    zero: np.ndarray
    rho_star: float
    omega_star: float
    omega_hat: float
    capped: bool = False

    def contains_point(self, x, tol: float = 0.0) -> bool:
        return float(np.max(np.abs(np.asarray(x) - self.zero))) <= self.rho_star + tol

    def contains_patch(self, patch: Patch, tol: float = 1e-12) -> bool:
        d = float(np.max(np.abs(np.asarray(patch.center) - self.zero)))
        return d + patch.radius <= self.rho_star + tol


def _theta_of(f: TensorPoly, theta: Optional[float]) -> float:
    return basis_theta(f.basis, f.m, f.n) if theta is None else float(theta)


def extended_domain(theta: float) -> tuple[float, float]:
    """The square ``[-gamma, 1 + gamma]`` (per axis) holding every test domain."""
    g = gamma(theta)
    return (-g, 1.0 + g)


def _as_box(region):
    if isinstance(region, Patch):
        return region.bounds
    (u_lo, u_hi), (v_lo, v_hi) = region
    return (float(u_lo), float(u_hi)), (float(v_lo), float(v_hi))


def lipschitz_bound(f: TensorPoly, x0, region) -> float:
    """Upper bound on the Lipschitz constant of ``f'(x0)^{-1} f'`` over ``region``.

    ``region`` is a :class:`Patch` or a box ``((u_lo, u_hi), (v_lo, v_hi))``.
    Each second partial of ``g = f'(x0)^{-1} f`` is reparametrized over the
    region and bounded by its coefficient interval; the result is four times
    the largest magnitude found.
    """
    if f.dim != 2:
        raise ValueError("lipschitz_bound needs a 2-vector system")
    Jinv = inverse_2x2(jacobian(f, x0))
    u_range, v_range = _as_box(region)
    biggest = 0.0
    for second in f.hessian:
        g = reparametrize_box(linear_combine(second, Jinv), u_range, v_range)
        for i in range(2):
            biggest = max(biggest, scalar_range(g.component(i)).magnitude)
    return 4.0 * biggest


def kantorovich_test(f: TensorPoly, patch: Patch, theta: Optional[float] = None) -> KantorovichReport:
    """Apply Kantorovich's theorem at the patch center.

    The Lipschitz domain is ``B(x0, 2 gamma r)`` clipped to the extended
    square. The patch passes when ``eta * omega_hat <= 1/4`` and the ball of
    radius ``rho_minus`` lies inside that domain.
    """
    th = _theta_of(f, theta)
    g = gamma(th)
    x0 = np.asarray(patch.center)
    try:
        Jinv = inverse_2x2(jacobian(f, x0))
    except SingularJacobian:
        return KantorovichReport(inf, inf, inf, None, None, Verdict.SINGULAR_JACOBIAN)
    eta = float(np.max(np.abs(Jinv @ evaluate(f, x0))))

    lo, hi = extended_domain(th)
    reach = 2.0 * g * patch.radius
    box = tuple((max(lo, c - reach), min(hi, c + reach)) for c in patch.center)
    omega_hat = lipschitz_bound(f, x0, box)
    h = eta * omega_hat

    if h > 0.5:
        return KantorovichReport(eta, omega_hat, h, None, None, Verdict.FAIL_H)
    root = sqrt(1.0 - 2.0 * h)
    # 2 eta / (1 + root) equals (1 - root) / omega and extends to omega = 0.
    rho_minus = 2.0 * eta / (1.0 + root)
    rho_plus = (1.0 + root) / omega_hat if omega_hat > 0 else inf
    if h > 0.25:
        return KantorovichReport(eta, omega_hat, h, rho_minus, rho_plus, Verdict.FAIL_H)
    inside = all(b_lo <= c - rho_minus and c + rho_minus <= b_hi
                 for c, (b_lo, b_hi) in zip(patch.center, box))
    verdict = Verdict.PASS if inside else Verdict.FAIL_DOMAIN
    return KantorovichReport(eta, omega_hat, h, rho_minus, rho_plus, verdict)


def safe_region(f: TensorPoly, x_star, theta: Optional[float] = None,
                residual_tol: float = 1e-10, rho_min: float = 1e-8,
                rho_max: Optional[float] = None, max_bisections: int = 200) -> SafeRegion:
    """Largest ``rho`` (by bisection) with ``rho * omega_hat(rho) <= 2``.

    ``omega_hat(rho)`` is :func:`lipschitz_bound` over ``B(x_star, rho)``.
    Since it over-estimates the true Lipschitz constant the radius returned is
    conservative.
    """
    x_star = np.array(x_star, dtype=float)
    res = float(np.max(np.abs(evaluate(f, x_star))))
    if res > residual_tol:
        raise ValueError(f"point {x_star.tolist()} is not a zero (residual {res:.3g})")
    th = _theta_of(f, theta)
    if rho_max is None:
        rho_max = 4.0 * (1.0 + 2.0 * gamma(th))

    def omega(rho: float) -> float:
        return lipschitz_bound(f, x_star, Patch(x_star, rho))

    w_hi = omega(rho_max)
    if rho_max * w_hi <= 2.0:
        return SafeRegion(x_star, rho_max, 2.0 / rho_max, w_hi, capped=True)
    w_lo = omega(rho_min)
    if rho_min * w_lo > 2.0:
        raise NoConvergence(f"even radius {rho_min} violates rho * omega <= 2")
    lo, hi = rho_min, rho_max
    for _ in range(max_bisections):
        if hi - lo <= 1e-6 * max(1.0, lo):
            return SafeRegion(x_star, lo, 2.0 / lo, w_lo)
        mid = 0.5 * (lo + hi)
        w = omega(mid)
        if mid * w > 2.0:
            hi = mid
        else:
            lo, w_lo = mid, w
    raise NoConvergence("safe-region bisection did not close its bracket")
