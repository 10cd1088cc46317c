from fractions import Fraction

import numpy as np
import pytest

from ternary_convexity.fourier import (
    PHI, basis_eval, boundary_edge_count, fourier_influence, fourier_influence_lines,
    fourier_transform, fourier_transform_naive, influence, influence_naive, inverse_transform,
    set_from_sign, sign_function, spectral_mass_above)
from ternary_convexity.ternary import PointSet, cube_trits


def test_basis_orthonormal():
    G = PHI @ PHI.T / 3
    assert np.allclose(G, np.eye(3))
    assert basis_eval((0, 0), (1, -1)) == 1.0


def test_fast_transform_matches_naive(rng):
    for n in (1, 2, 3, 4):
        f = rng.normal(size=3 ** n)
        assert np.allclose(fourier_transform(f).coefficients,
                           fourier_transform_naive(f).coefficients)


def test_inverse_roundtrip(rng):
    f = rng.normal(size=3 ** 5)
    assert np.allclose(inverse_transform(fourier_transform(f)), f)


def test_parseval_and_sandwich(rng):
    for _ in range(30):
        S = PointSet(4, rng.random(81) < 0.5)
        f = sign_function(S)
        t = fourier_transform(f)
        assert abs(t.total_mass() - 1) <= 1e-9
        I, IF = influence(S), fourier_influence_lines(f)
        assert Fraction(3, 8) * IF <= I <= Fraction(3, 4) * IF
        assert abs(fourier_influence(f) - float(IF)) <= 1e-8


def test_singleton_origin():
    S = PointSet.from_points([(0, 0)])
    # four outward edges leave the origin, each counted once
    assert influence(S) == Fraction(4, 9)
    assert fourier_influence_lines(sign_function(S)) == Fraction(16, 27)


def test_influence_duality(rng):
    for n in (1, 3, 5):
        S = PointSet(n, rng.random(3 ** n) < 0.5)
        assert influence(S) == influence_naive(S)
    assert boundary_edge_count(PointSet.full(3)) == 0


def test_constant_function():
    t = fourier_transform(np.ones(27))
    assert t[(0, 0, 0)] == pytest.approx(1.0)
    assert spectral_mass_above(t, 0) == pytest.approx(0.0)


def test_csv_export(tmp_path, rng):
    t = fourier_transform(rng.normal(size=9))
    p = tmp_path / "f.csv"
    t.to_csv(p)
    lines = p.read_text().splitlines()
    assert lines[0] == "alpha_index,alpha_trits,degree,coefficient" and len(lines) == 10


def test_sign_roundtrip(rng):
    S = PointSet(3, rng.random(27) < 0.5)
    assert set_from_sign(sign_function(S), 3) == S
    with pytest.raises(ValueError):
        set_from_sign(np.zeros(27), 3)
