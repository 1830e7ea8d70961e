"""Tensor-product polynomials in the power, Bernstein and Chebyshev bases.

A :class:`TensorPoly` stores a dense ``(m+1, n+1, d)`` grid of coefficient
vectors ``c_ij`` and represents ``f(u, v) = sum_ij c_ij phi_i(u) phi_j(v)``.
Polynomials are functions of the raw parameters ``(u, v)``; each basis also
has a natural interval ``[l, h]`` which matters for bounding polygons and for
reparametrization (a patch is always mapped onto ``[l, h]^2``).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Sequence, Union

import numpy as np
from numpy.polynomial import chebyshev as npcheb

__all__ = [
    "BasisKind",
    "TensorPoly",
    "Patch",
    "basis_values",
    "evaluate",
    "partial_derivative",
    "jacobian",
    "reparametrize",
    "reparametrize_box",
    "to_local",
    "linear_combine",
    "constant",
]


class BasisKind(enum.Enum):
    POWER = "power"
    BERNSTEIN = "bernstein"
    CHEBYSHEV = "chebyshev"

    @property
    def domain(self) -> tuple[float, float]:
        """Natural interval ``(l, h)`` of the basis."""
        if self is BasisKind.BERNSTEIN:
            return (0.0, 1.0)
        return (-1.0, 1.0)

    @classmethod
    def parse(cls, value: Union[str, "BasisKind"]) -> "BasisKind":
        if isinstance(value, BasisKind):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown basis {value!r}; expected one of "
                             f"{[b.value for b in cls]}") from None


@dataclass(frozen=True, eq=False)
class TensorPoly:
    """Bivariate tensor-product polynomial with vector coefficients.

    Parameters
    ----------
    basis : BasisKind or str
    coeffs : array_like
        Shape ``(m+1, n+1, d)``; a 2-D array is treated as scalar (``d = 1``).
    """

    basis: BasisKind
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim == 2:
            c = c[:, :, None]
        if c.ndim != 3 or c.shape[0] < 1 or c.shape[1] < 1 or c.shape[2] < 1:
            raise ValueError(f"coefficient grid must have shape (m+1, n+1, d), got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "basis", BasisKind.parse(self.basis))
        object.__setattr__(self, "coeffs", c)

    @property
    def m(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def n(self) -> int:
        return self.coeffs.shape[1] - 1

    @property
    def dim(self) -> int:
        return self.coeffs.shape[2]

    @property
    def degrees(self) -> tuple[int, int]:
        return (self.m, self.n)

    def __call__(self, point) -> np.ndarray:
        return evaluate(self, point)

    def component(self, k: int) -> "TensorPoly":
        return TensorPoly(self.basis, self.coeffs[:, :, k:k + 1])

    # Derived polynomials are cached on the (immutable) value.
    @cached_property
    def gradient(self) -> tuple["TensorPoly", "TensorPoly"]:
        return (partial_derivative(self, 0), partial_derivative(self, 1))

    @cached_property
    def hessian(self) -> tuple["TensorPoly", "TensorPoly", "TensorPoly"]:
        """Second partials ``(f_uu, f_uv, f_vv)``."""
        du, dv = self.gradient
        return (du.gradient[0], du.gradient[1], dv.gradient[1])

    def __repr__(self) -> str:
        return (f"TensorPoly(basis={self.basis.value}, degrees=({self.m}, {self.n}), "
                f"dim={self.dim})")


@dataclass(frozen=True)
class Patch:
    """Closed infinity-norm ball ``[u0-r, u0+r] x [v0-r, v0+r]``."""

    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        c = tuple(float(x) for x in self.center)
        if len(c) != 2:
            raise ValueError("patch center must be a 2-vector")
        if not self.radius > 0:
            raise ValueError(f"patch radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def width(self) -> float:
        return 2.0 * self.radius

    @property
    def bounds(self) -> tuple[tuple[float, float], tuple[float, float]]:
        (u0, v0), r = self.center, self.radius
        return ((u0 - r, u0 + r), (v0 - r, v0 + r))

    def children(self) -> list["Patch"]:
        """The four equal quadrants, ordered (lower-left, lower-right, upper-left, upper-right)."""
        (u0, v0), r = self.center, self.radius / 2
        return [Patch((u0 - r, v0 - r), r), Patch((u0 + r, v0 - r), r),
                Patch((u0 - r, v0 + r), r), Patch((u0 + r, v0 + r), r)]

    def contains(self, point, tol: float = 0.0) -> bool:
        d = np.abs(np.asarray(point, dtype=float) - self.center)
        return bool(np.max(d) <= self.radius + tol)


# ---------------------------------------------------------------------------
# evaluation

def basis_values(basis: BasisKind, degree: int, t) -> np.ndarray:
    """Values ``phi_0(t) .. phi_degree(t)``, stacked along a new last axis."""
    basis = BasisKind.parse(basis)
    t = np.asarray(t, dtype=float)
    out = np.empty(t.shape + (degree + 1,))
    if basis is BasisKind.POWER:
        out[..., 0] = 1.0
        for k in range(1, degree + 1):
            out[..., k] = out[..., k - 1] * t
    elif basis is BasisKind.CHEBYSHEV:
        out[..., 0] = 1.0
        if degree >= 1:
            out[..., 1] = t
        for k in range(1, degree):
            out[..., k + 1] = 2.0 * t * out[..., k] - out[..., k - 1]
    else:
        s = 1.0 - t
        for k in range(degree + 1):
            out[..., k] = comb(degree, k) * t**k * s**(degree - k)
    return out


def evaluate(p: TensorPoly, point) -> np.ndarray:
    """Evaluate ``p`` at one point ``(u, v)`` or at an array of points ``(..., 2)``.

    Returns an array of shape ``(..., d)``.
    """
    pt = np.asarray(point, dtype=float)
    if pt.shape[-1] != 2:
        raise ValueError(f"points must have a trailing axis of length 2, got {pt.shape}")
    bu = basis_values(p.basis, p.m, pt[..., 0])
    bv = basis_values(p.basis, p.n, pt[..., 1])
    tmp = np.tensordot(bu, p.coeffs, axes=([-1], [0]))  # (..., n+1, d)
    return np.sum(tmp * bv[..., None], axis=-2)


# ---------------------------------------------------------------------------
# differentiation

def _derive_1d(basis: BasisKind, c: np.ndarray) -> np.ndarray:
    """Differentiate along axis 0 of a coefficient array."""
    deg = c.shape[0] - 1
    if deg == 0:
        return np.zeros_like(c)
    if basis is BasisKind.POWER:
        k = np.arange(1, deg + 1, dtype=float).reshape((-1,) + (1,) * (c.ndim - 1))
        return k * c[1:]
    if basis is BasisKind.CHEBYSHEV:
        return npcheb.chebder(c, axis=0)
    return deg * (c[1:] - c[:-1])


def partial_derivative(p: TensorPoly, axis) -> TensorPoly:
    """``dp/du`` (axis 0 or ``"u"``) or ``dp/dv`` (axis 1 or ``"v"``), same basis."""
    ax = {"u": 0, "v": 1}.get(axis, axis)
    if ax not in (0, 1):
        raise ValueError(f"axis must be 0/'u' or 1/'v', got {axis!r}")
    c = np.moveaxis(p.coeffs, ax, 0)
    d = _derive_1d(p.basis, c)
    return TensorPoly(p.basis, np.moveaxis(d, 0, ax))


def jacobian(p: TensorPoly, point) -> np.ndarray:
    """Jacobian ``[df_i/dx_j]`` of a 2-vector system at ``point``."""
    du, dv = p.gradient
    return np.stack([evaluate(du, point), evaluate(dv, point)], axis=-1)


# ---------------------------------------------------------------------------
# reparametrization

def _de_casteljau_split(c: np.ndarray, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Split Bernstein coefficients (axis 0) at ``t``; ``t`` may lie outside [0, 1]."""
    n = c.shape[0] - 1
    left = np.empty_like(c)
    right = np.empty_like(c)
    work = c.copy()
    left[0] = work[0]
    right[n] = work[n]
    for r in range(1, n + 1):
        work = (1.0 - t) * work[:-1] + t * work[1:]
        left[r] = work[0]
        right[n - r] = work[-1]
    return left, right


def _bernstein_restrict(c: np.ndarray, a: float, b: float) -> np.ndarray:
    # Pick the split order whose second parameter has the larger denominator.
    if 1.0 - a >= b:
        _, c = _de_casteljau_split(c, a)
        c, _ = _de_casteljau_split(c, (b - a) / (1.0 - a))
    else:
        c, _ = _de_casteljau_split(c, b)
        _, c = _de_casteljau_split(c, a / b)
    return c


@lru_cache(maxsize=None)
def _cheb_power_matrices(degree: int) -> tuple[np.ndarray, np.ndarray]:
    to_power = np.zeros((degree + 1, degree + 1))
    to_cheb = np.zeros((degree + 1, degree + 1))
    for i, e in enumerate(np.eye(degree + 1)):
        col = npcheb.cheb2poly(e)
        to_power[:len(col), i] = col
        col = npcheb.poly2cheb(e)
        to_cheb[:len(col), i] = col
    return to_power, to_cheb


def _power_affine_matrix(degree: int, alpha: float, beta: float) -> np.ndarray:
    # (alpha t + beta)^i = sum_k C(i,k) alpha^k beta^(i-k) t^k
    M = np.zeros((degree + 1, degree + 1))
    for i in range(degree + 1):
        for k in range(i + 1):
            M[k, i] = comb(i, k) * alpha**k * beta**(i - k)
    return M


def _axis_matrix(basis: BasisKind, degree: int, lo: float, hi: float) -> np.ndarray:
    """Coefficient map for substituting ``t = affine(t_hat)``, ``[l,h] -> [lo,hi]``."""
    if basis is BasisKind.BERNSTEIN:
        return _bernstein_restrict(np.eye(degree + 1), lo, hi)
    l, h = basis.domain
    alpha = (hi - lo) / (h - l)
    beta = lo - l * alpha
    M = _power_affine_matrix(degree, alpha, beta)
    if basis is BasisKind.CHEBYSHEV:
        to_power, to_cheb = _cheb_power_matrices(degree)
        M = to_cheb @ M @ to_power
    return M


def reparametrize_box(p: TensorPoly, u_range, v_range) -> TensorPoly:
    """Polynomial ``q`` in the same basis with ``q(x_hat) = p(x)`` where the
    natural square ``[l,h]^2`` is mapped affinely onto ``u_range x v_range``."""
    Mu = _axis_matrix(p.basis, p.m, float(u_range[0]), float(u_range[1]))
    Mv = _axis_matrix(p.basis, p.n, float(v_range[0]), float(v_range[1]))
    return TensorPoly(p.basis, np.einsum("ai,ijk,bj->abk", Mu, p.coeffs, Mv))


def reparametrize(p: TensorPoly, patch: Patch) -> TensorPoly:
    """Reparametrize ``p`` over a square patch onto the basis's natural square."""
    u_range, v_range = patch.bounds
    return reparametrize_box(p, u_range, v_range)


def to_local(basis: BasisKind, patch: Patch, point) -> np.ndarray:
    """Natural-domain coordinates ``x_hat`` of a point ``x`` of ``patch``."""
    l, h = BasisKind.parse(basis).domain
    x = np.asarray(point, dtype=float)
    lo = np.asarray(patch.center) - patch.radius
    return l + (x - lo) * (h - l) / (2.0 * patch.radius)


# ---------------------------------------------------------------------------
# linear algebra on coefficients

def constant(basis, value, degrees: tuple[int, int] = (0, 0)) -> TensorPoly:
    """Constant polynomial with the given value, at the requested degrees."""
    basis = BasisKind.parse(basis)
    value = np.atleast_1d(np.asarray(value, dtype=float))
    m, n = degrees
    c = np.zeros((m + 1, n + 1, value.size))
    if basis is BasisKind.BERNSTEIN:
        c[:] = value
    else:
        c[0, 0] = value
    return TensorPoly(basis, c)


def linear_combine(polys: Union[TensorPoly, Sequence[TensorPoly]], A, b=None) -> TensorPoly:
    """Coefficientwise ``A @ f + b``.

    ``polys`` may be one polynomial or several sharing basis and degrees; their
    components are stacked into a single vector ``f`` before applying ``A``.
    """
    if isinstance(polys, TensorPoly):
        polys = [polys]
    first = polys[0]
    for q in polys[1:]:
        if q.basis is not first.basis or q.degrees != first.degrees:
            raise ValueError("linear_combine needs polynomials with a shared basis and degrees")
    C = np.concatenate([q.coeffs for q in polys], axis=2)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape[1] != C.shape[2]:
        raise ValueError(f"matrix with {A.shape[1]} columns cannot act on {C.shape[2]} components")
    out = np.einsum("kl,ijl->ijk", A, C)
    if b is not None:
        b = np.atleast_1d(np.asarray(b, dtype=float))
        if b.shape != (A.shape[0],):
            raise ValueError(f"offset has shape {b.shape}, expected ({A.shape[0]},)")
        if first.basis is BasisKind.BERNSTEIN:
            out = out + b
        else:
            out[0, 0] += b
    return TensorPoly(first.basis, out)
