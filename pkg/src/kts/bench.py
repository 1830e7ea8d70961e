"""Efficiency-versus-conditioning benchmark in the shape of a results table."""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .bounding import gamma, theta
from .driver import solve
from .errors import BudgetExhausted
from .intersect import reduce
from .io import ProblemFile, dump_problem, load_problem
from .polybasis import TensorPoly
from .verify import (brute_zeros, estimate_condition, fixture_illconditioned,
                     fixture_nearest_zero, reference_instance)

__all__ = ["BenchRow", "conditioning_suite", "write_suite", "bench_problem", "run_bench",
           "rows_to_csv", "CSV_COLUMNS"]

CSV_COLUMNS = ["name", "cond_lb", "num_zeros", "min_zero_distance", "patches_examined",
               "smallest_width", "max_newton_iterations", "status"]


@dataclass
class BenchRow:
    name: str
    cond_lb: Optional[float] = None
    num_zeros: Optional[int] = None
    min_zero_distance: Optional[float] = None
    patches_examined: Optional[int] = None
    smallest_width: Optional[float] = None
    max_newton_iterations: Optional[int] = None
    status: str = "ok"


def conditioning_suite() -> list[tuple[str, TensorPoly, dict]]:
    """Nine systems whose conditioning spans several orders of magnitude.

    Returns ``(name, system, config)`` triples. The nearest-zero systems put
    two zeros ``2/omega`` apart, so they need a minimum patch width below that.
    """
    fine = {"min_patch_width": 1e-12}
    alpha = [[0.1, 0.0], [0.0, 0.3]]
    suite = [("reference", reference_instance(), {})]
    for eps in (0.3, 0.1, 0.03, 0.01):
        suite.append((f"illcond_eps{eps:g}", fixture_illconditioned(0.5, 0.05, eps), {}))
    for omega in (2e3, 2e5, 2e8):
        suite.append((f"nearest_omega{omega:.0e}", fixture_nearest_zero((0.5, 0.5), alpha, omega), fine))
    suite.append(("nearest_skewed", fixture_nearest_zero((0.3, 0.6), [[1.0, 0.5], [0.2, 1e-3]], 2e4), fine))
    return suite


def write_suite(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, f, config in conditioning_suite():
        path = directory / f"{name}.json"
        path.write_text(dump_problem(ProblemFile("system2d", f, config=config, name=name)))
        paths.append(path)
    return paths


def _system(problem: ProblemFile) -> TensorPoly:
    if problem.mode == "surface_line":
        return reduce(problem.poly, problem.line)
    return problem.poly


def condition_lower_bound(f: TensorPoly, sample_n: int = 2000) -> float:
    """Sampled condition lower bound using real zeros found in the extended square."""
    g = gamma(theta(f.basis, f.m, f.n))
    zeros = brute_zeros(f, 256, domain=((-g, 1.0 + g), (-g, 1.0 + g)), residual_tol=1e-9)
    return estimate_condition(f, zeros, sample_n).cond_lb


def bench_problem(problem: ProblemFile, name: str) -> BenchRow:
    f = _system(problem)
    status = "ok"
    try:
        result = solve(f, problem.solve_config())
    except BudgetExhausted as exc:
        result, status = exc.result, "budget_exhausted"
    if status == "ok" and result.unresolved:
        status = "incomplete"
    zs = result.zeros
    gaps = [float(np.max(np.abs(a - b))) for a, b in itertools.combinations(zs, 2)]
    return BenchRow(name=name, cond_lb=condition_lower_bound(f), num_zeros=len(zs),
                    min_zero_distance=min(gaps) if gaps else None,
                    patches_examined=result.stats.patches_examined,
                    smallest_width=result.stats.smallest_width,
                    max_newton_iterations=result.stats.max_newton_iterations,
                    status=status)


def run_bench(paths: Iterable) -> list[BenchRow]:
    """One row per problem file, sorted by name; unreadable files become error rows."""
    rows = []
    for path in paths:
        path = Path(path)
        try:
            problem = load_problem(path)
        except (OSError, ValueError) as err:
            rows.append(BenchRow(name=path.stem, status=f"error: {err}"))
            continue
        rows.append(bench_problem(problem, problem.name or path.stem))
    rows.sort(key=lambda r: r.name)
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        values = [getattr(row, f.name) for f in fields(row)]
        writer.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in values])
    return buf.getvalue()
