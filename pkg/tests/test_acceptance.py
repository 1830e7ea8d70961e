"""The ten acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary (see ``conftest.py``). Run directly with
``python3 tests/test_acceptance.py`` or as part of ``pytest``.
"""
import time

import numpy as np
import pytest
from scipy.stats import spearmanr

from kts import (BasisKind, Line3, Patch, TensorPoly, Verdict, intersect, lipschitz_bound, linear_combine,
                 reduce, safe_region, solve, theta)
from kts.bench import conditioning_suite, condition_lower_bound
from kts.bounding import bounding_polygon
from kts.driver import SolveConfig
from kts.polybasis import evaluate
from kts.verify import brute_zeros, fixture_random, reference_instance

from checks import lipschitz_quotients, pass_violations, uniqueness_violations

RESULTS: dict[int, str] = {}


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    assert ok, RESULTS[n]


def border_system():
    return TensorPoly("power", [[(-0.25, -0.8), (0, 1)], [(0, 0), (0, 0)], [(1, 0), (0, 0)]])


def cubic_system():
    c = np.zeros((4, 3, 2))
    c[:, 0, 0] = (-0.35, 1.55, -2.2, 1.0)
    c[0, :, 1] = (0.1, -0.7, 1.0)
    return TensorPoly("power", c)


def random_instances():
    """50 seeded instances per basis with degrees 2..4 in each variable."""
    for basis in BasisKind:
        for s in range(50):
            yield basis, s, fixture_random(basis, 2 + s % 3, 2 + (s // 3) % 3, 1000 + s)


def matched(a, b, tol=1e-6):
    return len(a) == len(b) and all(any(np.max(np.abs(x - y)) <= tol for y in b) for x in a)


@pytest.fixture(scope="module")
def runs():
    """Solve results of criteria 1-3, shared with criterion 4."""
    out = {}
    t = time.perf_counter()
    out["reference"] = solve(reference_instance())
    out["reference_seconds"] = time.perf_counter() - t
    out["border"] = solve(border_system())
    t = time.perf_counter()
    random = []
    for basis, s, f in random_instances():
        random.append((basis, s, f, solve(f), brute_zeros(f)))
    out["random"] = random
    out["random_seconds"] = time.perf_counter() - t
    return out


def test_criterion_01_reference_instance(runs):
    r, f = runs["reference"], reference_instance()
    dist = float(np.max(np.abs(r.zeros[0] - r.zeros[1]))) if len(r.zeros) == 2 else float("nan")
    res = max(float(np.max(np.abs(f(z)))) for z in r.zeros) if r.zeros else float("nan")
    ok = (len(r.zeros) == 2 and abs(dist - 0.4196) <= 1e-3 and res <= 1e-10 and r.complete
          and r.stats.patches_examined <= 4 * 29 and runs["reference_seconds"] < 5)
    record(1, ok, f"zeros={len(r.zeros)} distance={dist:.6f} max_residual={res:.2e} "
                  f"patches={r.stats.patches_examined} unresolved={len(r.unresolved)} "
                  f"time={runs['reference_seconds']:.2f}s")


def test_criterion_02_border_zero(runs):
    r = runs["border"]
    ok = (len(r.zeros) == 1 and r.complete
          and float(np.max(np.abs(r.zeros[0] - (0.5, 0.8)))) <= 1e-10)
    record(2, ok, f"zeros={[z.tolist() for z in r.zeros]} unresolved={len(r.unresolved)} "
                  f"smallest_width={r.stats.smallest_width:g}")


def test_criterion_03_oracle_equivalence(runs):
    lines = []
    ok = runs["random_seconds"] < 60
    for basis in BasisKind:
        rows = [row for row in runs["random"] if row[0] is basis]
        complete = [row for row in rows if row[3].complete]
        mismatches = [row[1] for row in complete if not matched(row[3].zeros, row[4])]
        ok &= len(complete) >= 45 and not mismatches
        lines.append(f"{basis.value}: {len(complete)}/50 complete, mismatched seeds {mismatches}")
    record(3, ok, "; ".join(lines) + f"; time={runs['random_seconds']:.1f}s")


def test_criterion_04_kantorovich_soundness(runs):
    results = [runs["reference"], runs["border"]] + [row[3] for row in runs["random"]]
    passes = [rec for r in results for rec in r.trace if rec.outcome == Verdict.PASS.value]
    bad = [(rec.center, v) for rec in passes for v in pass_violations(rec)]
    record(4, bool(passes) and not bad, f"pass verdicts checked={len(passes)} violations={len(bad)}"
                                        + (f" first={bad[0]}" if bad else ""))


def test_criterion_05_bounding_polygon():
    rng = np.random.default_rng(5)
    contain_fail = theta_fail = 0
    count = 0
    for basis in BasisKind:
        lo, hi = basis.domain
        t = np.linspace(lo, hi, 200)
        grid = np.stack(np.meshgrid(t, t, indexing="ij"), axis=-1).reshape(-1, 2)
        for s in range(50):
            m, n = 1 + s % 4, 1 + (s // 4) % 4
            f = fixture_random(basis, m, n, 5000 + s)
            poly = bounding_polygon(f)
            v, e = poly.vertices, poly.edges
            vals = evaluate(f, lo + (hi - lo) * rng.random((10_000, 2)))
            rel = vals[:, None, :] - v[None, :, :]
            cross = e[:, 0] * rel[..., 1] - e[:, 1] * rel[..., 0]
            contain_fail += not np.all(cross >= -1e-9 * np.hypot(e[:, 0], e[:, 1]))
            biggest = float(np.max(np.abs(evaluate(f, grid))))
            theta_fail += not np.max(np.abs(v)) <= theta(basis, m, n) * biggest + 1e-9
            count += 1
    table = (theta("chebyshev", 3, 3) == 32 and theta("power", 1, 1) == 128
             and theta("bernstein", 1, 1) == 4)
    record(5, contain_fail == 0 and theta_fail == 0 and table,
           f"instances={count} containment_failures={contain_fail} theta_failures={theta_fail} "
           f"table_values={'match' if table else 'differ'}")


def test_criterion_06_affine_invariance():
    f = reference_instance()
    base = solve(f)
    key = [(t.center, t.radius, t.outcome) for t in base.trace]
    rng = np.random.default_rng(6)
    same, worst, tried = 0, 0.0, 0
    while tried < 10:
        A = rng.standard_normal((2, 2))
        if abs(np.linalg.det(A)) < 1e-3:
            continue
        tried += 1
        r = solve(linear_combine(f, A))
        if [(t.center, t.radius, t.outcome) for t in r.trace] == key and len(r.zeros) == len(base.zeros):
            same += 1
            worst = max([worst] + [float(np.max(np.abs(a - b))) for a, b in zip(r.zeros, base.zeros)])
    record(6, same == 10 and worst <= 1e-9,
           f"identical traces={same}/10 (length {len(key)}) max zero shift={worst:.1e}")


def test_criterion_07_conditioning_trend():
    conds, patches, names = [], [], []
    for name, f, cfg in conditioning_suite():
        r = solve(f, SolveConfig(record_trace=False, **cfg))
        names.append(name)
        conds.append(condition_lower_bound(f))
        patches.append(r.stats.patches_examined)
    rho = spearmanr(conds, patches).statistic
    detail = ", ".join(f"{n}:{c:.2g}/{p}" for n, c, p in zip(names, conds, patches))
    record(7, len(names) == 9 and rho >= 0.5,
           f"spearman={rho:.3f} cond_lb range=[{min(conds):.2g}, {max(conds):.2g}] ({detail})")


def test_criterion_08_omega_hat():
    rng = np.random.default_rng(8)
    worst = np.inf
    for k in range(100):
        basis = list(BasisKind)[k % 3]
        f = fixture_random(basis, 2 + k % 3, 2 + (k // 3) % 3, 8000 + k)
        r = 10 ** rng.uniform(-3, -0.3)
        c = rng.uniform(0, 1, 2)
        box = Patch(tuple(c), r).bounds
        w = lipschitz_bound(f, c, box)
        q = lipschitz_quotients(f, c, box, 500, rng).max()
        worst = min(worst, w / q)
    th = theta("power", 2, 1)
    w0 = lipschitz_bound(border_system(), (0.5, 0.8), ((0, 1), (0, 1)))
    ok = worst >= 1 - 1e-12 and 2 <= w0 <= 8 * th
    record(8, ok, f"min omega_hat/sampled={worst:.3f} over 100 pairs; border omega_hat={w0:g} "
                  f"in [2, {8 * th:g}]")


def test_criterion_09_safe_region():
    f = cubic_system()
    th = theta("power", 3, 2)
    s = safe_region(f, (0.5, 0.5))
    bad = uniqueness_violations(f, s)
    ok = 0 < s.rho_star <= 0.1 + 1e-6 and s.rho_star >= 0.1 / (4 * th) and not bad
    record(9, ok, f"rho*={s.rho_star:.6f} lower={0.1 / (4 * th):.2e} uniqueness_violations={len(bad)}")


def test_criterion_10_intersection_round_trip():
    rng = np.random.default_rng(10)
    worst, mismatch, hits_total = 0.0, [], 0
    for k in range(20):
        surface = TensorPoly("bernstein", rng.standard_normal((4, 4, 3)))
        d = rng.standard_normal(3)
        line = Line3(evaluate(surface, rng.random(2)) - rng.uniform(-1, 1) * d, d)
        hits = intersect(surface, line)
        oracle = brute_zeros(reduce(surface, line))
        hits_total += len(hits)
        if len(hits) != len(oracle):
            mismatch.append(k)
        for h in hits:
            gap = evaluate(surface, h.uv) - (line.p + h.t * line.d)
            worst = max(worst, float(np.max(np.abs(gap))))
    record(10, worst <= 1e-8 and not mismatch,
           f"instances=20 intersections={hits_total} max_residual={worst:.1e} count_mismatches={mismatch}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
