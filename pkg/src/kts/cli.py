"""Command-line front end: ``kts solve|intersect|bench|fixtures``.

Exit codes: 0 for a complete run, 2 when some patches stayed unresolved,
1 for bad input. ``KTS_LOG=quiet|info|trace`` sets the log level; ``trace``
prints one line per examined patch.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path

from .bench import rows_to_csv, run_bench
from .errors import BudgetExhausted, ZeroDirection
from .intersect import intersect_detailed
from .io import ProblemError, ProblemFile, build_report, dump_problem, dump_report, load_problem
from .driver import solve
from .verify import fixture_illconditioned, fixture_nearest_zero, fixture_random

EXIT_OK, EXIT_ERROR, EXIT_INCOMPLETE = 0, 1, 2

_LEVELS = {"quiet": logging.WARNING, "info": logging.INFO, "trace": logging.DEBUG}


def _setup_logging() -> None:
    level = _LEVELS.get(os.environ.get("KTS_LOG", "quiet").lower(), logging.WARNING)
    logger = logging.getLogger("kts")
    logger.setLevel(level)
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
        logger.addHandler(handler)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fail(message: str) -> int:
    print(f"kts: error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _load(path: str, mode: str) -> ProblemFile:
    problem = load_problem(path)
    if problem.mode != mode:
        raise ProblemError(f"field mode: expected {mode!r}, got {problem.mode!r}")
    return problem


def cmd_solve(args) -> int:
    try:
        problem = _load(args.file, "system2d")
        config = problem.solve_config(min_patch_width=args.min_width, max_patches=args.max_patches,
                                      record_trace=False)
    except (OSError, ValueError) as err:
        return _fail(f"{args.file}: {err}")
    start = time.perf_counter()
    exhausted = False
    try:
        result = solve(problem.poly, config)
    except BudgetExhausted as exc:
        result, exhausted = exc.result, True
    seconds = time.perf_counter() - start
    cond = None
    if args.cond:
        from .bench import condition_lower_bound
        cond = condition_lower_bound(problem.poly)
    doc = build_report("system2d", result, poly=problem.poly, cond_lb=cond, name=problem.name,
                       seconds=seconds, budget_exhausted=exhausted)
    _emit(dump_report(doc), args.out)
    return EXIT_OK if doc["complete"] else EXIT_INCOMPLETE


def cmd_intersect(args) -> int:
    try:
        problem = _load(args.file, "surface_line")
        config = problem.solve_config(min_patch_width=args.min_width, max_patches=args.max_patches,
                                      record_trace=False)
    except (OSError, ValueError, ZeroDirection) as err:
        return _fail(f"{args.file}: {err}")
    start = time.perf_counter()
    exhausted = False
    try:
        found, result = intersect_detailed(problem.poly, problem.line, config, ray=args.ray)
    except BudgetExhausted as exc:
        found, result, exhausted = exc.intersections, exc.result, True
    doc = build_report("surface_line", result, intersections=found, name=problem.name,
                       seconds=time.perf_counter() - start, budget_exhausted=exhausted)
    _emit(dump_report(doc), args.out)
    return EXIT_OK if doc["complete"] else EXIT_INCOMPLETE


def cmd_bench(args) -> int:
    suite = Path(args.dir)
    if not suite.is_dir():
        return _fail(f"{suite}: not a directory")
    paths = sorted(suite.glob("*.json"))
    if not paths:
        return _fail(f"{suite}: no problem files (*.json)")
    rows = run_bench(paths)
    _emit(rows_to_csv(rows), args.csv)
    return EXIT_OK if any(not r.status.startswith("error") for r in rows) else EXIT_ERROR


def cmd_fixtures(args) -> int:
    try:
        if args.kind == "illconditioned":
            f = fixture_illconditioned(args.u0, args.v0, args.eps)
            name = f"illconditioned_eps{args.eps:g}"
        elif args.kind == "nearest_zero":
            f = fixture_nearest_zero(args.x_star, args.alpha, args.omega)
            name = f"nearest_zero_omega{args.omega:g}"
        else:
            m, n = args.deg
            if m < 0 or n < 0:
                raise ValueError("degrees must be nonnegative")
            f = fixture_random(args.basis, m, n, args.seed)
            name = f"random_{args.basis}_{m}x{n}_seed{args.seed}"
    except ValueError as err:
        return _fail(str(err))
    _emit(dump_problem(ProblemFile("system2d", f, name=name)), args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors: exit 1, since 2 means "incomplete run"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kts", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find all zeros of a 2x2 system in the unit square")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--min-width", type=float)
    p.add_argument("--max-patches", type=int)
    p.add_argument("--cond", action="store_true", help="also estimate a condition lower bound")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("intersect", help="intersect a line with a surface patch")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--ray", action="store_true", help="keep only t >= 0")
    p.add_argument("--min-width", type=float)
    p.add_argument("--max-patches", type=int)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("bench", help="run every problem file in a directory")
    p.add_argument("dir")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("fixtures", help="write a generated problem file")
    p.add_argument("kind", choices=["illconditioned", "nearest_zero", "random"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--u0", type=float, default=0.5)
    p.add_argument("--v0", type=float, default=0.05)
    p.add_argument("--deg", type=int, nargs=2, default=[2, 2], metavar=("M", "N"))
    p.add_argument("--basis", default="bernstein", choices=["power", "bernstein", "chebyshev"])
    p.add_argument("--omega", type=float, default=20.0)
    p.add_argument("--alpha", type=float, nargs=4, default=[0.1, 0.0, 0.0, 0.3],
                   metavar=("A1", "A2", "A3", "A4"))
    p.add_argument("--x-star", type=float, nargs=2, default=[0.5, 0.5], metavar=("U", "V"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
