import math
from fractions import Fraction

import numpy as np
import pytest

from ternary_convexity.hull import distance_lower_bound_triples, is_convex, is_poset_down_closed
from ternary_convexity.instances import (
    SlabSpec, TalagrandParams, TasSpec, collision_statistic, density_profile,
    intersection_threshold, make_antislab, make_ball, make_halfspace_set,
    make_random_halfspace_intersection, make_slab, make_tas, rademacher_tail, sample_dno,
    sample_dyes, sample_terms, satisfied_terms, term_vector)
from ternary_convexity.ternary import PointSet, cube_trits, cube_weights


def test_ball_and_halfspace_are_convex(rng):
    n = 4
    for r in range(n + 2):
        assert is_convex(make_ball(r, n))
    for _ in range(5):
        S = make_halfspace_set(rng.normal(size=n), rng.normal(), n)
        assert is_convex(S)


def test_rademacher_tail_brute():
    w = 5
    sums = np.array([sum(s) for s in np.ndindex(*(2,) * w)]) * 2 - w
    for tau in range(-6, 6):
        assert rademacher_tail(w, tau) == Fraction(int((sums > tau).sum()), 2 ** w)


def test_intersection_threshold():
    tau, rho = intersection_threshold(12, 0.1)
    assert rho >= Fraction(1, 10)
    assert rademacher_tail(8, tau + 1) < Fraction(1, 10)


def test_random_intersection_is_convex(rng):
    inst = make_random_halfspace_intersection(4, rng, k=3)
    assert inst.k == 3 and is_convex(inst.set)


def test_density_profile_rows():
    prof = density_profile(36, 14)
    assert prof.rows and all(0 <= r <= 1 for *_, r in prof.rows)
    assert prof.ratio >= 1


def test_slabs_partition(rng):
    n = 5
    spec = TasSpec.standard(n, rng)
    T = make_tas(spec, n)
    assert 0 < len(T) < 3 ** n


def test_terms_and_vectors(rng):
    params = TalagrandParams.default(9)
    coords, signs = sample_terms(params, rng)
    assert coords.shape == signs.shape == (params.N, coords.shape[1])
    pts = cube_trits(3)
    sat = satisfied_terms(pts, np.array([[0, 1]]), np.array([[1, -1]]))
    assert sat[:, 0].sum() == 3
    assert term_vector(np.array([0, 0]), np.array([1, -1]), 3) is None


def test_yes_no_draws(rng):
    yes = sample_dyes(9, rng)
    assert is_poset_down_closed(yes.set)
    no = sample_dno(9, rng)
    assert distance_lower_bound_triples(no.set) > 0


def test_collision_bound(rng):
    est, bound = collision_statistic(9, 2, rng, trials=300)
    assert est <= bound
