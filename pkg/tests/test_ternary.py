import math
from fractions import Fraction

import numpy as np
import pytest

from ternary_convexity.ternary import (
    Layer, PointSet, comparable_pair_count, concentration_check, cube_trits, cube_weights,
    decode, edge_arrays, edge_count, edges, encode, indices_of, layer_classify, layer_count,
    layer_masks, middle_mask, poset_leq, sample_middle, trits_of, up_indices, up_pair_probability,
    up_shadow, weight, weight_band)


def test_encode_decode_roundtrip():
    for n in range(5):
        for i in range(3 ** n):
            assert encode(decode(i, n)) == i
    assert encode((1, 0)) == 1
    assert encode((-1, 0)) == 2
    assert encode((0, 1)) == 3


def test_encode_rejects_bad_trit():
    with pytest.raises(ValueError):
        encode((2, 0))


def test_vectorised_conversions_agree():
    n = 4
    idx = np.arange(3 ** n)
    T = trits_of(idx, n)
    assert (indices_of(T) == idx).all()
    assert (cube_trits(n) == T).all()
    assert (cube_weights(n) == np.count_nonzero(T, axis=1)).all()


@pytest.mark.parametrize("n", range(1, 6))
def test_edges_enumeration(n):
    es = list(edges(n))
    assert len(es) == edge_count(n) == 2 * n * 3 ** (n - 1)
    assert len(set(es)) == len(es)
    for u, v in es:
        a, b = decode(u, n), decode(v, n)
        diff = [i for i in range(n) if a[i] != b[i]]
        assert len(diff) == 1 and a[diff[0]] == 0
    U, V = edge_arrays(n)
    assert sorted(zip(U.tolist(), V.tolist())) == sorted(es)


def test_poset_and_up_shadow():
    assert poset_leq((0, 1), (1, 1))
    assert poset_leq((0, 0), (-1, 1))
    assert not poset_leq((1, 0), (0, 0))
    y = (0, 1, 0)
    up = up_shadow(y)
    assert len(up) == 9
    assert all(poset_leq(y, x) for x in up.points())
    assert up_indices(encode(y), 3)[0] == encode(y)


@pytest.mark.parametrize("n", range(1, 7))
def test_comparable_pairs(n):
    brute = sum(len(up_indices(y, n)) for y in range(3 ** n))
    assert brute == comparable_pair_count(n) == 5 ** n
    assert up_pair_probability(n) == Fraction(5, 9) ** n


def test_layers_partition():
    n, tau = 6, 1.5
    masks = layer_masks(n, tau)
    total = sum(m.astype(int) for m in masks.values())
    assert (total == 1).all()
    lo, hi = weight_band(n, tau)
    w = cube_weights(n)
    assert (masks[Layer.MIDDLE] == ((w >= lo) & (w <= hi))).all()
    assert layer_classify((0,) * n, tau) is Layer.INNER
    assert layer_classify((1,) * n, tau) is Layer.OUTER
    assert sum(layer_count(n, k) for k in range(n + 1)) == 3 ** n


def test_empty_middle():
    assert not middle_mask(1, 0).any()


def test_concentration():
    frac, bound = concentration_check(9, 2)
    assert float(frac) <= bound


def test_sample_middle_weights(rng):
    n, tau = 10, 2
    pts = sample_middle(rng, n, tau, size=5000)
    lo, hi = weight_band(n, tau)
    w = np.count_nonzero(pts, axis=1)
    assert w.min() >= lo and w.max() <= hi
    # weight frequencies follow the layer sizes
    sizes = np.array([layer_count(n, k) for k in range(lo, hi + 1)], float)
    freq = np.bincount(w - lo, minlength=hi - lo + 1) / len(w)
    assert np.abs(freq - sizes / sizes.sum()).max() < 0.03


def test_pointset_algebra():
    A = PointSet.from_points([(0, 0), (1, 0)])
    B = PointSet.from_points([(1, 0), (0, 1)])
    assert len(A | B) == 3 and len(A & B) == 1 and len(A - B) == 1
    assert A.symmetric_difference_size(B) == 2
    assert (0, 0) in A and (0, 1) not in A
    assert len(A.complement()) == 7
    assert A == A.copy() and hash(A) == hash(A.copy())
    assert len(PointSet.full(2)) == 9 and len(PointSet.empty(2)) == 0
