"""The subdivision loop: exclusion test, Kantorovich test, safe regions."""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bounding import bounding_polygon, contains_origin, theta as basis_theta
from .errors import BudgetExhausted, KTSError
from .kanto import KantorovichReport, kantorovich_test, safe_region
from .newton import NewtonOutcome, newton_solve
from .polybasis import Patch, TensorPoly, reparametrize

__all__ = [
    "SolveConfig",
    "SolveStats",
    "PatchRecord",
    "SolveResult",
    "exclusion_test",
    "solve",
    "UNIT_PATCH",
]

log = logging.getLogger("kts")

UNIT_PATCH = Patch((0.5, 0.5), 0.5)


@dataclass(frozen=True)
class SolveConfig:
    min_patch_width: float = 1e-6
    max_patches: int = 10**6
    step_tol: float = 1e-12
    max_iter: int = 50
    zero_residual_tol: float = 1e-10
    duplicate_tol: float = 1e-8
    record_trace: bool = True

    def __post_init__(self):
        for name in ("min_patch_width", "max_patches", "step_tol", "max_iter",
                     "zero_residual_tol", "duplicate_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class SolveStats:
    patches_examined: int = 0
    smallest_width: float = 1.0
    max_newton_iterations: int = 0


@dataclass(frozen=True)
class PatchRecord:
    """One examined patch and what happened to it.

    ``outcome`` is ``"safe"`` (inside a safe region), ``"excluded"``, or the
    Kantorovich verdict value. ``newton`` is set when Newton was launched.
    """

    center: tuple[float, float]
    radius: float
    outcome: str
    report: Optional[KantorovichReport] = None
    newton: Optional[NewtonOutcome] = None


@dataclass
class SolveResult:
    zeros: list = field(default_factory=list)
    safe_regions: list = field(default_factory=list)
    stats: SolveStats = field(default_factory=SolveStats)
    unresolved: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.unresolved


def exclusion_test(f: TensorPoly, patch: Patch) -> bool:
    """True when the bounding polygon of ``f`` over ``patch`` misses the origin."""
    return not contains_origin(bounding_polygon(reparametrize(f, patch)))


def _in_unit_square(x, tol: float) -> bool:
    return bool(np.all(x >= -tol) and np.all(x <= 1.0 + tol))


def solve(f: TensorPoly, config: Optional[SolveConfig] = None) -> SolveResult:
    """Find all zeros of the 2x2 system ``f`` in the unit square.

    Patches are processed first-in first-out starting from the unit square.
    A patch inside a safe region is dropped, one whose bounding polygon misses
    the origin is excluded, and otherwise the Kantorovich test runs at its
    center; a pass launches Newton, and a new zero gets its safe region
    recorded. Every patch that is not dropped or excluded is split into four
    quadrants. Quadrants narrower than ``min_patch_width`` are reported as
    unresolved.

    Raises :class:`BudgetExhausted` (carrying the partial result) when more
    than ``max_patches`` patches would be examined.
    """
    if f.dim != 2:
        raise ValueError(f"solve needs a 2-vector system, got d={f.dim}")
    cfg = config or SolveConfig()
    th = basis_theta(f.basis, f.m, f.n)
    result = SolveResult()
    stats = result.stats
    queue = deque([UNIT_PATCH])
    zeros: list[np.ndarray] = []

    def record(patch, outcome, report=None, newton=None):
        if cfg.record_trace:
            result.trace.append(PatchRecord(patch.center, patch.radius, outcome, report, newton))
        log.debug("patch center=(%.17g, %.17g) radius=%.17g outcome=%s",
                  patch.center[0], patch.center[1], patch.radius, outcome)

    while queue:
        if stats.patches_examined >= cfg.max_patches:
            result.unresolved.extend(queue)
            result.zeros = [z for z in zeros]
            raise BudgetExhausted(f"patch budget of {cfg.max_patches} exhausted", result)
        patch = queue.popleft()
        stats.patches_examined += 1
        stats.smallest_width = min(stats.smallest_width, patch.width)

        if any(s.contains_patch(patch) for s in result.safe_regions):
            record(patch, "safe")
            continue
        if exclusion_test(f, patch):
            record(patch, "excluded")
            continue

        report = kantorovich_test(f, patch, th)
        outcome = None
        if report.passed:
            outcome = newton_solve(f, patch.center, cfg.step_tol, cfg.max_iter)
            stats.max_newton_iterations = max(stats.max_newton_iterations, outcome.iterations)
            x = outcome.zero
            if outcome.converged and outcome.residual <= cfg.zero_residual_tol:
                known = (any(s.contains_point(x) for s in result.safe_regions)
                         or any(np.max(np.abs(x - z)) <= cfg.duplicate_tol for z in zeros))
                if not known:
                    try:
                        result.safe_regions.append(
                            safe_region(f, x, th, residual_tol=cfg.zero_residual_tol))
                    except KTSError as exc:
                        log.info("no safe region around %s: %s", x.tolist(), exc)
                    if _in_unit_square(x, cfg.duplicate_tol):
                        zeros.append(x)
                        log.info("zero found at (%.17g, %.17g)", x[0], x[1])
        record(patch, report.verdict.value, report, outcome)

        for child in patch.children():
            if child.width < cfg.min_patch_width:
                result.unresolved.append(child)
            else:
                queue.append(child)

    result.zeros = zeros
    return result
