import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from ternary_convexity import walks as wk


def _dss_brute(x):
    for eps in itertools.product((-1, 0, 1), repeat=len(x)):
        if any(eps) and sum(e * v for e, v in zip(eps, x)) == 0:
            return False
    return True


def test_has_dss_matches_enumeration(rng):
    for _ in range(200):
        x = rng.integers(1, 12, size=int(rng.integers(1, 7))).tolist()
        assert wk.has_dss(x) == _dss_brute(x)
    assert wk.has_dss([1, 2]) and not wk.has_dss([1, 1])


def test_dss_perturb_is_certified(rng):
    x = wk.dss_perturb(10, rng)
    assert x.dss_certified and wk.has_dss(x.x)


def test_hand_trace():
    st = wk.crossing_stats([1, -1, 1, -1])
    assert (st.C, st.C_down, st.C_up) == (3, 2, 1)
    st.check()
    mono = wk.crossing_stats([0, 1, 2, 3])
    assert mono.C_down == 0 and mono.S_down == 0


def test_identities_on_random_traces(rng):
    X = np.array([wk.dss_perturb(12, rng).x for _ in range(3)])
    sig, eps = wk.random_sigma_eps(rng, 12, 2000)
    vals = wk.walk_batch(X, rng.uniform(-1, 1, 3), sig, eps)
    C = wk.crossing_counts(vals)
    for row, c in zip(vals, C):
        st = wk.crossing_stats(row)
        st.check()
        assert st.C == c


def test_walk_batch_matches_single_walks(rng):
    X = np.array([wk.dss_perturb(5, rng).x for _ in range(2)])
    a = np.array([0.3, -0.2])
    sig, eps = wk.random_sigma_eps(rng, 5, 4)
    vals = wk.walk_batch(X, a, sig, eps)
    for j in range(4):
        ref = wk.max_walk(list(X), list(a), sig[j], eps[j]).values
        assert np.allclose(vals[j], ref)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_sparre_andersen_exhaustive(m, rng):
    x = wk.dss_perturb(m, rng).x
    hits = total = 0
    for sigma in itertools.permutations(range(m)):
        for eps in itertools.product((-1, 1), repeat=m):
            W = np.cumsum(np.array(eps) * x[list(sigma)])
            hits += bool((W > 0).all())
            total += 1
    assert Fraction(hits, total) == wk.sparre_andersen_g(m)


def test_R_law():
    assert sum(wk.R_pmf(t) for t in range(1, 200)) == 1 - wk.sparre_andersen_g(199)
    assert wk.R_pmf(1) == Fraction(1, 2)


def test_expected_Q_by_convolution():
    m = 12
    dist = [Fraction(1)] + [Fraction(0)] * m  # law of R_1 + ... + R_k on [0, m]
    total = Fraction(0)
    for _ in range(m):
        dist = [sum(dist[s - t] * wk.R_pmf(t) for t in range(1, s + 1)) for s in range(m + 1)]
        total += sum(dist)
    assert total == wk.expected_Q(m)


def test_sample_Q_mean(rng):
    q = [wk.sample_Q(16, rng) for _ in range(20000)]
    se = np.std(q) / math.sqrt(len(q))
    assert abs(np.mean(q) - float(wk.expected_Q(16))) <= 4 * se


def test_point_probabilities_sum_to_one():
    n = 9
    p = wk.CubeWalkParams.for_n(n)
    for s in range(1, p.m + 1):
        tot = sum(math.comb(n, w) * 2 ** w * wk.point_probability(n, w, s, p) for w in range(n + 1))
        assert tot == 1


def test_cube_walk_steps_are_outward(rng):
    b = wk.cube_walk_batch(9, rng, 500)
    prev = b.points(0)
    for j in range(1, b.params.m + 1):
        cur = b.points(j)
        diff = cur != prev
        assert (diff.sum(axis=1) == 1).all()
        assert (prev[diff] == 0).all()
        prev = cur


def test_halfspace_reduction_agrees(rng):
    fam = wk.dss_halfspaces(9, 3, rng)
    b = wk.cube_walk_batch(9, rng, 2000)
    M, members = wk.halfspace_walk_reduction(fam, b)
    assert ((M < 0) == members).all()
