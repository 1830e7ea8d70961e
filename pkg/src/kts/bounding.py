"""Bounding polygons of patch ranges and the basis constants theta, gamma.

Bernstein polynomials are bounded by the convex hull of their control points.
Power and Chebyshev polynomials are bounded by the zonogon
``{c_00 + sum_{i+j>0} s_ij c_ij : -1 <= s_ij <= 1}``, which is built exactly
by sorting generator directions, so no linear program is needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Optional

import numpy as np

from .polybasis import BasisKind, TensorPoly

__all__ = [
    "ConvexPolygon",
    "Interval",
    "convex_hull",
    "zonogon",
    "bounding_polygon",
    "contains_point",
    "contains_origin",
    "scalar_range",
    "theta",
    "gamma",
]

# Relative slack for closed membership; boundary points count as inside.
_MEMBERSHIP_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Counterclockwise vertex list; one vertex is a point, two a segment.

    ``edges[k]`` runs from vertex ``k`` to vertex ``k+1``. When omitted it is
    taken from vertex differences; zonogons pass their generators instead,
    since vertices accumulated from tiny generators lose the edge direction.
    """

    vertices: np.ndarray
    edges: Optional[np.ndarray] = None

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float).reshape(-1, 2)
        if len(v) == 0:
            raise ValueError("a polygon needs at least one vertex")
        if self.edges is None:
            e = np.roll(v, -1, axis=0) - v
        else:
            e = np.array(self.edges, dtype=float).reshape(-1, 2)
            if e.shape != v.shape:
                raise ValueError("need exactly one edge per vertex")
        v.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "edges", e)

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3

    def __len__(self) -> int:
        return len(self.vertices)

    def affine_image(self, A, b=None) -> "ConvexPolygon":
        """Image under ``y -> A y + b``; orientation is restored if ``det A < 0``."""
        A = np.asarray(A, dtype=float)
        v = self.vertices @ A.T
        e = self.edges @ A.T
        if b is not None:
            v = v + np.asarray(b, dtype=float)
        if np.linalg.det(A) < 0 and len(v) > 2:
            # reversed traversal: vertex k+1 -> k along -e_k
            v = v[::-1]
            e = -np.roll(e[::-1], -1, axis=0)
        return ConvexPolygon(v, e)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @property
    def magnitude(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> ConvexPolygon:
    """Monotone-chain hull; collinear points are dropped."""
    pts = np.unique(np.asarray(points, dtype=float).reshape(-1, 2), axis=0)
    if len(pts) <= 2:
        return ConvexPolygon(pts)
    pts = [tuple(p) for p in pts]  # np.unique sorts lexicographically

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return ConvexPolygon(np.array(hull))


def zonogon(center, generators) -> ConvexPolygon:
    """Minkowski sum ``center + sum_k [-g_k, g_k]`` as a counterclockwise polygon."""
    c = np.asarray(center, dtype=float)
    g = np.asarray(generators, dtype=float).reshape(-1, 2)
    g = g[np.any(g != 0.0, axis=1)]
    if len(g) == 0:
        return ConvexPolygon(c[None, :])
    # Orient every generator into the half-plane angle in [0, pi).
    flip = (g[:, 1] < 0) | ((g[:, 1] == 0) & (g[:, 0] < 0))
    g[flip] *= -1.0
    ang = np.arctan2(g[:, 1], g[:, 0])
    g = g[np.argsort(ang, kind="stable")]
    # Merge exactly parallel generators.
    merged = [g[0].copy()]
    for vec in g[1:]:
        last = merged[-1]
        if last[0] * vec[1] - last[1] * vec[0] == 0.0:
            merged[-1] = last + vec
        else:
            merged.append(vec.copy())
    G = np.array(merged)
    start = c - G.sum(axis=0)
    steps = np.concatenate([2.0 * G, -2.0 * G])
    verts = start + np.concatenate([[np.zeros(2)], np.cumsum(steps[:-1], axis=0)])
    if len(G) == 1:
        return ConvexPolygon(verts[:2])
    return ConvexPolygon(verts, steps)


def bounding_polygon(p: TensorPoly) -> ConvexPolygon:
    """Convex polygon containing ``{p(u,v) : (u,v) in [l,h]^2}`` for a 2-vector ``p``."""
    if p.dim != 2:
        raise ValueError(f"bounding polygons are defined for 2-vector polynomials, got d={p.dim}")
    c = p.coeffs.reshape(-1, 2)
    if p.basis is BasisKind.BERNSTEIN:
        return convex_hull(c)
    return zonogon(c[0], c[1:])


def _segment_distance(a, b, x) -> float:
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0.0 else min(1.0, max(0.0, float((x - a) @ ab) / denom))
    return float(np.linalg.norm(a + t * ab - x))


def contains_point(poly: ConvexPolygon, point) -> bool:
    """Closed membership test; points on the boundary count as inside."""
    x = np.asarray(point, dtype=float)
    v = poly.vertices
    scale = max(1.0, float(np.max(np.abs(v))), float(np.max(np.abs(x))))
    tol = _MEMBERSHIP_RTOL * scale
    if len(v) == 1:
        return float(np.max(np.abs(v[0] - x))) <= tol
    if len(v) == 2:
        return _segment_distance(v[0], v[1], x) <= tol
    edges = poly.edges
    rel = x - v
    cross = edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0]
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    return bool(np.all(cross >= -tol * lengths))


def contains_origin(poly: ConvexPolygon) -> bool:
    return contains_point(poly, (0.0, 0.0))


def scalar_range(p: TensorPoly) -> Interval:
    """Interval containing ``{p(x) : x in [l,h]^2}`` for a scalar polynomial."""
    if p.dim != 1:
        raise ValueError(f"scalar_range needs a scalar polynomial, got d={p.dim}")
    c = p.coeffs[:, :, 0]
    if p.basis is BasisKind.BERNSTEIN:
        return Interval(float(c.min()), float(c.max()))
    spread = float(np.abs(c).sum() - abs(c[0, 0]))
    return Interval(float(c[0, 0]) - spread, float(c[0, 0]) + spread)


def _bernstein_theta_1d(m: int) -> float:
    total = 0.0
    for i in range(m + 1):
        prod = 1.0
        for k in range(m + 1):
            if k != i:
                prod *= max(abs(m - k), abs(k)) / abs(i - k)
        total += prod
    return total


def theta(basis, m: int, n: int) -> float:
    """Looseness factor of the basis's bounding polygon at degrees ``(m, n)``."""
    basis = BasisKind.parse(basis)
    if m < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    if basis is BasisKind.CHEBYSHEV:
        return 2.0 * (m + 1) * (n + 1)
    if basis is BasisKind.POWER:
        return (m + 1) * (n + 1) * (3**(m + 1) - 1) * (3**(n + 1) - 1) / 2.0
    return _bernstein_theta_1d(m) * _bernstein_theta_1d(n)


def gamma(theta_value: float) -> float:
    """Domain enlargement factor ``1 / (4 sqrt(theta (4 theta + 1)) - 8 theta)``."""
    t = float(theta_value)
    if not t >= 1.0:
        raise ValueError(f"theta must be at least 1, got {theta_value}")
    # Rationalized form of the same expression, free of cancellation at large theta.
    return (sqrt(t * (4.0 * t + 1.0)) + 2.0 * t) / (4.0 * t)
