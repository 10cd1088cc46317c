"""Acceptance suite: thirteen criteria, one PASS/FAIL line each.

Run with ``pytest -v tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
Every criterion is seeded; tolerances and time budgets are fixed below.
"""
from __future__ import annotations

import math
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from ternary_convexity import walks as wk
from ternary_convexity.experiments import Config, make_family, run, trial_rng
from ternary_convexity.hull import distance_lower_bound_triples
from ternary_convexity.instances import TasSpec, make_tas
from ternary_convexity.ternary import (Layer, comparable_pair_count, cube_trits, edge_count,
                                       edges, layer_count, layer_masks, up_indices, weight_band)
from ternary_convexity.testers import MembershipOracle, nonadaptive_onesided_test

SEED = 20261016
BUDGET_S = {1: 10, 2: 300, 3: 600, 4: 900, 5: 120, 6: 1800, 7: 60, 8: 300, 9: 1200,
            10: 600, 11: 1200, 12: 60, 13: 60}


def c01():
    ok = True
    for n in range(1, 9):
        es = list(edges(n))
        ok &= len(es) == len(set(es)) == edge_count(n) == 2 * n * 3 ** (n - 1)
        T = cube_trits(n)
        zeros = (T == 0).sum(axis=1)
        sizes = np.array([len(up_indices(y, n)) for y in range(3 ** n)])
        ok &= bool((sizes == 3 ** zeros).all())
        ok &= int(sizes.sum()) == comparable_pair_count(n) == 5 ** n
        for tau in (0, 0.5, 1, math.sqrt(n), n):
            masks = layer_masks(n, tau)
            ok &= bool((sum(m.astype(int) for m in masks.values()) == 1).all())
            if masks[Layer.MIDDLE].any():
                lo, hi = weight_band(n, tau)
                ok &= int(masks[Layer.MIDDLE].sum()) == sum(layer_count(n, w) for w in range(lo, hi + 1))
    return ok, "n=1..8: edges, up-shadows, 5^n pairs, layer partition"


def c02():
    r = run(Config("distance-oracles", n=[2]))
    return r.passed, f"{r.summary['sets']} subsets at n=2, sandwich exact"


def c03():
    fams = ("ball", "halfspace", "intersection", "dyes")
    rejections = runs = 0
    for n in (9, 12):
        for i in range(200):
            fam = fams[i % 4]
            S, _ = make_family(fam, n, trial_rng(SEED, 3, n, i))
            for s in range(5):
                v = nonadaptive_onesided_test(MembershipOracle(S), n, 0.1,
                                              trial_rng(SEED, 30, n, i, s))
                rejections += not v.accept
                runs += 1
    return rejections == 0, f"{runs} runs on 400 convex instances, {rejections} rejections"


def c04():
    certified = rejects = 0
    bounds = []
    for t in range(50):
        S = make_tas(TasSpec.standard(12, trial_rng(SEED, 4, t)), 12)
        b = distance_lower_bound_triples(S)
        bounds.append(float(b))
        certified += b >= Fraction(3, 100)
        v = nonadaptive_onesided_test(MembershipOracle(S), 12, 0.03, trial_rng(SEED, 40, t))
        rejects += not v.accept
    ok = certified == 50 and 3 * rejects >= 2 * 50
    return ok, (f"certified >= 0.03: {certified}/50 (max triple bound {max(bounds):.5f}); "
                f"tester rejected {rejects}/50")


def c05():
    r = run(Config("influence-scaling", n=[5], trials=100, seed=SEED, family="random"))
    worst_p = max(x["parseval_err"] for x in r.records)
    worst_s = max(x["spectral_err"] for x in r.records)
    return (r.checks["parseval"] and r.checks["spectral_vs_lines"] and r.checks["sandwich"],
            f"100 functions at n=5, max Parseval err {worst_p:.1e}, max spectral err {worst_s:.1e}")


def c06():
    r = run(Config("learner-eval", n=[6], epsilon=0.25, trials=30, seed=SEED,
                   params={"tau_deg": 3}))
    ok = r.checks["budget_exact"] and r.summary["successes"] >= 20
    return ok, f"{r.summary['successes']}/30 runs with error <= 0.25, budget {r.summary['budget']}"


def c07():
    r = run(Config("sparre-andersen", m=[2, 4, 8, 16], trials=100_000, seed=SEED,
                   params={"level_checks": False}))
    zs = ", ".join(f"m={x['m']}: z={x['z']:+.2f}" for x in r.records)
    return r.passed, zs


def c08():
    w = run(Config("walk-scaling", m=[16, 64], trials=10_000, seed=SEED,
                   params={"k": 8, "full_stats_max": 64, "slope_band": (-10, 10)}))
    s = run(Config("sparre-andersen", m=[2], trials=1000, seed=SEED,
                   params={"level_trials": 10_000, "level_m": [16, 64]}))
    stat = {k: v for k, v in s.checks.items() if k.startswith("E[")}
    ok = w.checks["per_trace_identities"] and all(stat.values())
    lv = [x for x in s.records if "E_Q" in x]
    detail = "; ".join(f"m={x['m']}: E[S]={x['mean_S']:.3f} E[Q]={x['E_Q']:.3f} "
                       f"E[L]={x['mean_L_down_max']:.3f}" for x in lv)
    return ok, f"{len(w.records)} traces, identities hold; {detail}"


def c09():
    r = run(Config("walk-scaling", m=[16, 64, 256, 1024], trials=10_000, seed=SEED,
                   params={"k": 8, "full_stats_max": 0, "slope_band": (0.35, 0.65)}))
    return r.checks["slope"], f"slope {r.summary['slope']:.3f} (band [0.35, 0.65])"


def _point_probability_check(n=9, T=1_000_000, chunk=200_000):
    rng = trial_rng(SEED, 10, 1)
    p = wk.CubeWalkParams.for_n(n)
    counts = {s: np.zeros(3 ** n, dtype=np.int64) for s in range(1, p.m + 1)}
    for start in range(0, T, chunk):
        b = wk.cube_walk_batch(n, rng, chunk, p)
        path = b.path_indices()
        for s in counts:
            counts[s] += np.bincount(path[:, s], minlength=3 ** n)
    w = np.count_nonzero(cube_trits(n), axis=1)
    worst, tested = 0.0, 0
    for s, c in counts.items():
        for target in range(n + 1):
            prob = float(wk.point_probability(n, target, s, p))
            pts = np.flatnonzero(w == target)[:5]
            for z in pts:
                sd = math.sqrt(T * prob * (1 - prob)) or 1.0
                worst = max(worst, abs(c[z] - T * prob) / sd)
                tested += 1
    return worst <= 4, worst, tested


def c10():
    r = run(Config("walk-scaling", n=[12], trials=10_000, seed=SEED, family="cube",
                   params={"k": 4}))
    ok_pp, worst, tested = _point_probability_check()
    return (r.passed and ok_pp,
            f"{r.summary['mismatches']} mismatches in 10^4 walks; {tested} points at n=9, "
            f"worst deviation {worst:.2f} sigma")


def c11():
    r = run(Config("dyes-dno", n=[9], trials=20, seed=SEED))
    s = r.summary
    return r.passed, (f"yes draws convex {r.checks['yes_convex']}, far no draws {s['far_draws']}/20, "
                      f"collision {s['collision']:.4f} <= {s['collision_bound']:.3f}")


def c12():
    r = run(Config("binomial-sweep", seed=SEED))
    worst = max(abs(x["log_ratio"]) * math.sqrt(x["n"]) for x in r.records)
    ratios = ", ".join(f"{k}: {v:.3f}" for k, v in r.summary["truncated_ratio"].items())
    return r.passed, f"max |log ratio| * sqrt(n) = {worst:.4f}; truncated-form ratios {ratios}"


def c13():
    r = run(Config("influence-scaling", n=[5, 9], trials=50, seed=SEED, family="random"))
    return r.checks["duality"], f"{len(r.records)} sets, edge scan == per-point recount"


CRITERIA = [
    (1, "exact combinatorics", c01),
    (2, "distance oracle sandwich", c02),
    (3, "one-sidedness on convex families", c03),
    (4, "tester completeness on TAS", c04),
    (5, "Fourier identities", c05),
    (6, "low-degree learner", c06),
    (7, "all-positive walk frequencies", c07),
    (8, "walk coupling identities", c08),
    (9, "crossing scaling exponent", c09),
    (10, "cube-walk halfspace reduction", c10),
    (11, "yes/no distributions", c11),
    (12, "binomial approximations", c12),
    (13, "influence oracle duality", c13),
]


def evaluate(k: int, title: str, fn) -> tuple[bool, str]:
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    ok = bool(ok) and dt <= BUDGET_S[k]
    line = (f"{'PASS' if ok else 'FAIL'} criterion {k:2d} {title}: {detail} "
            f"[{dt:.1f}s / {BUDGET_S[k]}s]")
    return ok, line


@pytest.mark.parametrize("k,title,fn", CRITERIA, ids=[f"c{k:02d}" for k, _, _ in CRITERIA])
def test_criterion(k, title, fn, capsys):
    ok, line = evaluate(k, title, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
