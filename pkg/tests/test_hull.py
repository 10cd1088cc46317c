from fractions import Fraction

import numpy as np
import pytest

from ternary_convexity.hull import (
    HullCertificate, distance_lower_bound_triples, distance_to_convex_exact,
    distance_upper_bound_closure, find_minimal_violating_pair, hull_closure, in_hull, is_convex,
    is_poset_down_closed, nearest_convex, verify_violating_pair, violating_triples)
from ternary_convexity.ternary import PointSet, cube_trits, decode, encode


def _convex_brute(S):
    pts = S.points()
    if not pts:
        return True
    for y in PointSet(S.n, ~S.mask).points():
        if in_hull(y, pts)[0]:
            return False
    return True


def test_in_hull_certificate_replays():
    ok, cert = in_hull((0, 0), [(1, 1), (-1, -1), (1, 0)])
    assert ok
    acc, total = cert.replay(2)
    assert total == 1 and acc == (0, 0)
    assert not in_hull((1, 1), [(0, 0), (1, 0)])[0]


def test_three_point_example():
    S = PointSet.from_points([(-1, 1), (1, 0), (0, -1)])
    assert not is_convex(S)
    assert hull_closure(S) == S | PointSet.from_points([(0, 0)])
    pair = find_minimal_violating_pair(S)
    assert pair.y == 0 and pair.X == (1, 5, 6)
    assert verify_violating_pair(S, pair)
    assert distance_to_convex_exact(S) == Fraction(1, 9)
    assert distance_lower_bound_triples(S) == 0
    assert distance_upper_bound_closure(S, 2) == Fraction(1, 9)


def test_opposite_points_in_one_dimension():
    S = PointSet.from_points([(-1,), (1,)])
    assert distance_to_convex_exact(S) == Fraction(1, 3)
    assert distance_lower_bound_triples(S) == Fraction(1, 9)


def test_corner_set_is_convex():
    # (0, 0) is outside the triangle, so no grid point is added
    assert is_convex(PointSet.from_points([(-1, 1), (1, 0), (0, 1)]))


def test_is_convex_against_full_hull_search(rng):
    for n in (1, 2):
        for code in range(2 ** 3 ** n) if n == 1 else rng.integers(0, 512, 120):
            mask = np.array([(int(code) >> i) & 1 for i in range(3 ** n)], bool)
            S = PointSet(n, mask)
            assert is_convex(S) == _convex_brute(S)


def test_closure_is_convex_and_contains(rng):
    for _ in range(20):
        S = PointSet(3, rng.random(27) < 0.3)
        T = hull_closure(S)
        assert (T.mask | ~S.mask).all()
        assert is_convex(T)


def test_down_closed_sets_are_convex(rng):
    n = 3
    w = np.count_nonzero(cube_trits(n), axis=1)
    for r in range(n + 2):
        S = PointSet(n, w < r)
        assert is_poset_down_closed(S) and is_convex(S)


def test_triples_are_disjoint_and_valid(rng):
    for _ in range(10):
        n = 4
        S = PointSet(n, rng.random(81) < 0.5)
        L = violating_triples(S)
        assert len(np.unique(L)) == L.size
        T = cube_trits(n)
        for x, y, z in L:
            assert S.mask[x] and S.mask[z] and not S.mask[y]
            assert (T[x] + T[z] == 2 * T[y]).all()


def test_distance_sandwich_small(rng):
    for code in rng.integers(0, 512, 60):
        S = PointSet(2, np.array([(int(code) >> i) & 1 for i in range(9)], bool))
        lo = distance_lower_bound_triples(S)
        ex = distance_to_convex_exact(S)
        assert lo <= ex <= distance_upper_bound_closure(S, 2)
        proj, d = nearest_convex(S)
        assert is_convex(proj) and d == ex


def test_exact_distance_capped():
    with pytest.raises(ValueError):
        distance_to_convex_exact(PointSet.empty(3))
