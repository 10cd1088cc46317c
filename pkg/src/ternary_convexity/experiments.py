"""Named, seeded experiments.  Each returns per-trial records, a summary and a
dict of pass/fail checks; the CLI only serialises them."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from . import binomial as bn
from .fourier import (fourier_influence_lines, fourier_influence_spectral, fourier_transform,
                      influence, influence_naive, sign_function, set_from_sign)
from .hull import (distance_lower_bound_triples, distance_to_convex_exact,
                   distance_upper_bound_closure, is_convex, is_poset_down_closed,
                   verify_violating_pair)
from .instances import (TasSpec, collision_statistic, density_profile, make_ball,
                        make_halfspace_set, make_random_halfspace_intersection, make_tas,
                        sample_dno, sample_dyes, single_bucket_probability)
from .testers import (ExampleStream, MembershipOracle, hypothesis_error_exact,
                      low_degree_learn, low_degree_sample_count, nonadaptive_onesided_test)
from .ternary import PointSet
from . import walks as wk

N_CAP = 14


class UsageError(ValueError):
    pass


@dataclass
class Config:
    experiment: str
    n: list[int] | None = None
    m: list[int] | None = None
    epsilon: float | None = None
    seed: int = 0
    trials: int | None = None
    family: str | None = None
    out: str | None = None
    format: str = "csv"
    threads: int | None = None
    params: dict = field(default_factory=dict)

    def ns(self, default: list[int]) -> list[int]:
        ns = self.n or default
        for n in ns:
            if not 1 <= n <= N_CAP:
                raise UsageError(f"n={n} is outside the supported range 1..{N_CAP}")
        return ns


@dataclass
class Result:
    records: list[dict]
    summary: dict
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


def _map(fn: Callable, items: list, threads: int | None) -> list:
    if not threads or threads <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _mean_se(x) -> tuple[float, float]:
    x = np.asarray(x, dtype=float)
    if x.size < 2:
        return float(x.mean()) if x.size else math.nan, math.nan
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size))


# ---------------------------------------------------------------- families

CONVEX_FAMILIES = ("ball", "halfspace", "intersection", "dyes")


def make_family(family: str, n: int, rng: np.random.Generator) -> tuple[PointSet, dict]:
    if family == "ball":
        # radii around the middle layers, where boundaries are largest
        c, h = 2 * n / 3, math.sqrt(n)
        r = float(rng.uniform(c - h, c + h))
        return make_ball(r, n), {"r": r}
    if family == "halfspace":
        v = rng.normal(size=n)
        tau = float(rng.normal(0, math.sqrt(2 * n / 3)))
        return make_halfspace_set(v, tau, n), {"tau": tau}
    if family == "intersection":
        k = int(rng.integers(1, 9))
        inst = make_random_halfspace_intersection(n, rng, k=k)
        return inst.set, {"k": k, "tau": inst.tau}
    if family == "dyes":
        inst = sample_dyes(n, rng)
        return inst.set, {"N": inst.params.N}
    if family == "tas":
        spec = TasSpec.standard(n, rng)
        return make_tas(spec, n), {"v": "".join("0+-"[a % 3] for a in spec.v)}
    if family == "random":
        return PointSet(n, rng.random(3 ** n) < 0.5), {}
    raise UsageError(f"unknown family {family!r}")


# ---------------------------------------------------------------- experiments

def exp_influence_scaling(cfg: Config) -> Result:
    """Edge-scan influence against a per-point recount, plus the Fourier
    identities where the spectrum is computed."""
    trials = cfg.trials or 50
    family = cfg.family or "random"
    recs, checks = [], {"duality": True, "parseval": True, "spectral_vs_lines": True,
                        "sandwich": True}
    for n in cfg.ns([5, 9]):
        for t in range(trials):
            rng = trial_rng(cfg.seed, n, t)
            S, _ = make_family(family, n, rng)
            I = influence(S)
            naive = influence_naive(S)
            f = sign_function(S)
            lines = fourier_influence_lines(f)
            rec = {"n": n, "trial": t, "size": len(S), "influence": str(I),
                   "influence_naive": str(naive), "fourier_lines": str(lines)}
            checks["duality"] &= I == naive
            checks["sandwich"] &= Fraction(3, 8) * lines <= I <= Fraction(3, 4) * lines
            if n <= 8:
                tab = fourier_transform(f)
                mass = tab.total_mass()
                spec = fourier_influence_spectral(f)
                rec["parseval_err"] = abs(mass - 1)
                rec["spectral_err"] = abs(spec - float(lines))
                checks["parseval"] &= rec["parseval_err"] <= 1e-9
                checks["spectral_vs_lines"] &= rec["spectral_err"] <= 1e-8
            recs.append(rec)
    summary = {"family": family, "trials": trials,
               "mean_influence": {n: float(np.mean([float(Fraction(r["influence"]))
                                                    for r in recs if r["n"] == n]))
                                  for n in sorted({r["n"] for r in recs})}}
    return Result(recs, summary, checks)


def exp_tester_eval(cfg: Config) -> Result:
    """Run the one-sided tester on a seeded instance family."""
    trials = cfg.trials or 50
    family = cfg.family or "tas"
    eps = cfg.epsilon or 0.05
    (n,) = cfg.ns([12])[:1]

    def one(t: int) -> dict:
        S, meta = make_family(family, n, trial_rng(cfg.seed, 0, t))
        v = nonadaptive_onesided_test(MembershipOracle(S), n, eps, trial_rng(cfg.seed, 1, t))
        rec = {"seed": cfg.seed, "trial": t, "n": n, "epsilon": eps, "decision": v.decision,
               "queries": v.queries_used, "rounds": v.rounds,
               "witness": " ".join(map(str, v.witness.X + (v.witness.y,))) if v.witness else "",
               "witness_ok": bool(v.witness is None or verify_violating_pair(S, v.witness))}
        if family == "tas" and cfg.params.get("triples", True):
            rec["triple_bound"] = float(distance_lower_bound_triples(S))
        return rec

    recs = _map(one, list(range(trials)), cfg.threads)
    rejects = sum(r["decision"] == "reject" for r in recs)
    checks = {"witnesses_verify": all(r["witness_ok"] for r in recs)}
    if family in CONVEX_FAMILIES:
        checks["no_false_rejections"] = rejects == 0
    if "min_reject_rate" in cfg.params:
        checks["reject_rate"] = rejects >= cfg.params["min_reject_rate"] * trials
    summary = {"family": family, "n": n, "epsilon": eps, "trials": trials,
               "reject_rate": rejects / trials,
               "mean_queries": float(np.mean([r["queries"] for r in recs]))}
    if recs and "triple_bound" in recs[0]:
        summary["mean_triple_bound"] = float(np.mean([r["triple_bound"] for r in recs]))
    return Result(recs, summary, checks)


def exp_learner_eval(cfg: Config) -> Result:
    """Low-degree learner on a ball; exact full-domain error per run."""
    trials = cfg.trials or 30
    eps = cfg.epsilon or 0.25
    (n,) = cfg.ns([6])[:1]
    tau_deg = int(cfg.params.get("tau_deg", 3))
    radius = cfg.params.get("radius", 2 * n / 3)
    S = make_ball(radius, n)
    budget = low_degree_sample_count(n, eps, tau_deg)

    def one(t: int) -> dict:
        stream = ExampleStream(S, trial_rng(cfg.seed, t))
        h = low_degree_learn(stream, n, eps, tau_deg)
        err = hypothesis_error_exact(h, S)
        return {"seed": cfg.seed, "trial": t, "n": n, "epsilon": eps, "tau_deg": tau_deg,
                "samples": stream.drawn, "error": str(err), "ok": err <= Fraction(eps)}

    recs = _map(one, list(range(trials)), cfg.threads)
    good = sum(r["ok"] for r in recs)
    checks = {"budget_exact": all(r["samples"] == budget for r in recs),
              "success_rate": 3 * good >= 2 * trials}
    return Result(recs, {"budget": budget, "successes": good, "trials": trials}, checks)


def _maxwalk_cells(cfg: Config, ms: list[int], trials: int, k: int, full_stats_max: int):
    recs, checks, means = [], {"per_trace_identities": True}, {}
    for ci, m in enumerate(ms):
        rng = trial_rng(cfg.seed, ci)
        X = np.array([wk.dss_perturb(m, rng).x for _ in range(k)])
        A = rng.uniform(-1, 1, size=k)
        Cs = []
        done = 0
        while done < trials:
            b = min(1000, trials - done)
            sig, eps = wk.random_sigma_eps(rng, m, b)
            vals = wk.walk_batch(X, A, sig, eps)
            if m <= full_stats_max:
                for j, row in enumerate(vals):
                    st = wk.crossing_stats(row)
                    ok = (st.C == st.C_down + st.C_up and st.C <= 2 * st.C_down + 1
                          and st.C_down <= st.L_down)
                    checks["per_trace_identities"] &= ok
                    recs.append({"seed": cfg.seed, "m": m, "trial": done + j, **asdict(st)})
                    Cs.append(st.C)
            else:
                C = wk.crossing_counts(vals)
                Cs.extend(int(c) for c in C)
                recs.extend({"seed": cfg.seed, "m": m, "trial": done + j, "C": int(c)}
                            for j, c in enumerate(C))
            done += b
        means[m] = _mean_se(Cs)
    return recs, checks, means


def exp_walk_scaling(cfg: Config) -> Result:
    """Crossing counts of max-walks (family maxwalk) or the cube-walk reduction (family cube)."""
    family = cfg.family or "maxwalk"
    if family == "maxwalk":
        trials = cfg.trials or 10_000
        ms = cfg.m or [16, 64, 256, 1024]
        k = int(cfg.params.get("k", 8))
        recs, checks, means = _maxwalk_cells(cfg, ms, trials, k,
                                             int(cfg.params.get("full_stats_max", 64)))
        slope = float(np.polyfit(np.log(ms), np.log([means[m][0] for m in ms]), 1)[0]) \
            if len(ms) >= 2 else math.nan
        lo, hi = cfg.params.get("slope_band", (0.35, 0.65))
        checks["slope"] = len(ms) < 2 or lo <= slope <= hi
        return Result(recs, {"slope": slope, "mean_C": {m: means[m] for m in ms}, "k": k}, checks)
    if family == "cube":
        return _cube_walk(cfg)
    raise UsageError(f"unknown walk family {family!r}")


def _cube_walk(cfg: Config) -> Result:
    trials = cfg.trials or 10_000
    n = cfg.ns([12])[0]
    k = int(cfg.params.get("k", 4))
    rng = trial_rng(cfg.seed, 0)
    fam = wk.dss_halfspaces(n, k, rng)
    batch = wk.cube_walk_batch(n, rng, trials)
    M, members = wk.halfspace_walk_reduction(fam, batch)
    crossed_direct = members[:, 1:] != members[:, :-1]
    neg = M < 0
    crossed_walk = neg[:, 1:] != neg[:, :-1]
    mismatches = int(np.count_nonzero((neg != members)) +
                     np.count_nonzero(crossed_direct != crossed_walk))
    rows = np.arange(trials)
    chosen = crossed_direct[rows, batch.s - 1]
    recs = [{"seed": cfg.seed, "n": n, "trial": t, "s": int(batch.s[t]),
             "crossed": bool(chosen[t]), "C": int(crossed_walk[t].sum())} for t in range(trials)]
    summary = {"n": n, "k": k, "m": batch.params.m, "mismatches": mismatches,
               "p_crossed": float(chosen.mean()), "start_rejections": batch.rejected}
    return Result(recs, summary, {"reduction_equivalence": mismatches == 0})


def exp_sparre_andersen(cfg: Config) -> Result:
    """All-positive frequencies against g(m), and level-decrease statistics against E[Q]."""
    trials = cfg.trials or 100_000
    ms = cfg.m or [2, 4, 8, 16]
    recs, checks, summary = [], {}, {}
    for ci, m in enumerate(ms):
        rng = trial_rng(cfg.seed, ci)
        x = wk.dss_perturb(m, rng)
        p = wk.all_positive_probability(x, trials, rng)
        g = wk.sparre_andersen_g(m)
        sd = math.sqrt(float(g) * (1 - float(g)) / trials)
        z = (p - float(g)) / sd
        checks[f"g({m})"] = abs(z) <= 4
        recs.append({"seed": cfg.seed, "m": m, "trials": trials, "frequency": p,
                     "g": str(g), "g_float": float(g), "z": z})
    summary["cells"] = len(ms)
    if cfg.params.get("level_checks", True):
        lt = int(cfg.params.get("level_trials", 10_000))
        for ci, m in enumerate(cfg.params.get("level_m", [16, 64])):
            rng = trial_rng(cfg.seed, 100 + ci)
            EQ = float(wk.expected_Q(m))
            x = wk.dss_perturb(m, rng)
            a = float(rng.uniform(-1, 1))
            sig, eps = wk.random_sigma_eps(rng, m, lt)
            s_vals = [(lambda st: st.S_down + st.S_up)(wk.crossing_stats(r))
                      for r in wk.walk_batch(x.x[None], [a], sig, eps)]
            X = np.array([wk.dss_perturb(m, rng).x for _ in range(8)])
            A = rng.uniform(-1, 1, size=8)
            sig, eps = wk.random_sigma_eps(rng, m, lt)
            l_vals = [wk.crossing_stats(r).L_down for r in wk.walk_batch(X, A, sig, eps)]
            q_vals = [wk.sample_Q(m, rng) for _ in range(lt)]
            # perturbed all-ones walk from 0 against Z of the unperturbed one
            sig, eps = wk.random_sigma_eps(rng, m, lt)
            s0 = [(lambda st: st.S_down + st.S_up)(wk.crossing_stats(r))
                  for r in wk.walk_batch(x.x[None], [0.0], sig, eps)]
            W1 = np.concatenate([np.zeros((lt, 1)), np.cumsum(eps, axis=1)], axis=1)
            z_vals = (np.abs(W1[:, 1:]) <= 1).sum(axis=1)
            m0, se0 = _mean_se(s0)
            mz, se_z = _mean_se(z_vals)
            checks[f"E[S]<=E[Z] m={m}"] = m0 <= mz + 4 * math.hypot(se0, se_z)
            ms_, se_s = _mean_se(s_vals)
            ml, se_l = _mean_se(l_vals)
            mq, se_q = _mean_se(q_vals)
            checks[f"E[S]=E[Q] m={m}"] = abs(ms_ - EQ) <= 4 * se_s
            checks[f"E[L_down]<=E[Q] m={m}"] = ml <= EQ + 4 * se_l
            checks[f"Q sampler m={m}"] = abs(mq - EQ) <= 4 * se_q
            recs.append({"seed": cfg.seed, "m": m, "trials": lt, "E_Q": EQ, "mean_S": ms_,
                         "se_S": se_s, "mean_L_down_max": ml, "se_L": se_l, "mean_Q_sampled": mq,
                         "mean_S_from_zero": m0, "mean_Z": mz, "Z_over_sqrt_m": mz / math.sqrt(m)})
    return Result(recs, summary, checks)


def exp_density_profile(cfg: Config) -> Result:
    """Exact rho(ell, tau) across the middle layers."""
    ns = cfg.n or [36, 81, 144]
    recs, ratios = [], {}
    for n in ns:
        for label, expo in (("n^0.75", 0.75), ("n^0.9", 0.9)):
            tau = math.floor(n ** expo)
            prof = density_profile(n, tau)
            ratios[(n, label)] = prof.ratio
            for ell, w, rho in prof.rows:
                recs.append({"n": n, "tau_rule": label, "tau": tau, "ell": str(ell), "weight": w,
                             "rho": float(rho)})
    cap = float(cfg.params.get("ratio_cap", 1e3))
    checks = {
        "bounded_at_3/4": all(ratios[(n, "n^0.75")] <= cap for n in ns),
        "diverges_at_0.9": all(ratios[(n, "n^0.9")] >= ratios[(n, "n^0.75")] for n in ns),
    }
    summary = {"ratios": {f"{n} {lab}": r for (n, lab), r in ratios.items()}}
    return Result(recs, summary, checks)


def exp_dyes_dno(cfg: Config) -> Result:
    """Yes draws checked for convexity, no draws for triple-certified distance, plus collisions."""
    n = cfg.ns([9])[0]
    trials = cfg.trials or 20
    thr = float(cfg.params.get("triple_threshold", 0.01))

    def one(t: int) -> dict:
        yes = sample_dyes(n, trial_rng(cfg.seed, 0, t))
        no = sample_dno(n, trial_rng(cfg.seed, 1, t))
        down = is_poset_down_closed(yes.set)
        return {"seed": cfg.seed, "trial": t, "n": n,
                "yes_convex": down or is_convex(yes.set), "yes_down_closed": down,
                "no_triple_bound": float(distance_lower_bound_triples(no.set))}

    recs = _map(one, list(range(trials)), cfg.threads)
    far = sum(r["no_triple_bound"] >= thr for r in recs)
    rng = trial_rng(cfg.seed, 2)
    coll, bound = collision_statistic(n, int(cfg.params.get("s", 2)), rng,
                                      int(cfg.params.get("collision_trials", 10_000)))
    single = single_bucket_probability(n, rng, int(cfg.params.get("collision_trials", 10_000)))
    N = 3 ** math.ceil(math.sqrt(n))
    checks = {"yes_convex": all(r["yes_convex"] for r in recs),
              "yes_non_increasing": all(r["yes_down_closed"] for r in recs),
              "no_far": 3 * far >= trials,
              "collision": coll <= bound}
    summary = {"far_draws": far, "trials": trials, "collision": coll, "collision_bound": bound,
               "single_bucket": single, "single_bucket_bound": 5 / N}
    return Result(recs, summary, checks)


def exp_binomial_sweep(cfg: Config) -> Result:
    """Middle binomial approximations and Stirling bounds in high precision."""
    ns = cfg.n or cfg.params.get("ns", list(range(50, 401, 50)))
    recs, checks = [], {"series_approx": True, "truncated_approx": True, "stirling": True}
    for n, tau in bn.sweep_taus(ns):
        r = bn.approx_report(n, tau)
        ok = abs(r.log_ratio) <= 1 / math.sqrt(n)
        checks["series_approx"] &= ok
        recs.append({"n": n, "tau": tau, "exact_log2": r.exact_log2,
                     "approx_log2": r.approx_log2, "log_ratio": r.log_ratio})
    cor = {}
    for n in (100, 200, 400):
        tau = bn.parity_adjust(n, int(n ** 0.75))
        ratio = float(bn.exact_binomial(n, (n - tau) // 2) / bn.approx_truncated(n, tau, 2))
        cor[n] = ratio
        checks["truncated_approx"] &= 0.25 <= ratio <= 4
    checks["stirling"] = all(bn.stirling_holds(k) for k in range(1, 171))
    return Result(recs, {"truncated_ratio": cor}, checks)


def exp_distance_oracles(cfg: Config) -> Result:
    """Distance sandwich over every subset of a tiny cube."""
    recs, ok = [], True
    for n in cfg.n or [1, 2]:
        if n > 2:
            raise UsageError("distance-oracles enumerates every subset; n must be 1 or 2")
        for code in range(2 ** 3 ** n):
            S = PointSet(n, np.array([(code >> i) & 1 for i in range(3 ** n)], dtype=bool))
            lo = distance_lower_bound_triples(S)
            ex = distance_to_convex_exact(S)
            hi = distance_upper_bound_closure(S, n)
            good = lo <= ex <= hi
            ok &= good
            recs.append({"n": n, "code": code, "lower": str(lo), "exact": str(ex),
                         "upper": str(hi), "ok": good})
    return Result(recs, {"sets": len(recs)}, {"sandwich": ok})


EXPERIMENTS: dict[str, Callable[[Config], Result]] = {
    "influence-scaling": exp_influence_scaling,
    "tester-eval": exp_tester_eval,
    "learner-eval": exp_learner_eval,
    "walk-scaling": exp_walk_scaling,
    "sparre-andersen": exp_sparre_andersen,
    "density-profile": exp_density_profile,
    "dyes-dno": exp_dyes_dno,
    "binomial-sweep": exp_binomial_sweep,
    "distance-oracles": exp_distance_oracles,
}


def run(cfg: Config) -> Result:
    if cfg.experiment not in EXPERIMENTS:
        raise UsageError(f"unknown experiment {cfg.experiment!r}")
    return EXPERIMENTS[cfg.experiment](cfg)
