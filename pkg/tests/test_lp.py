from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from ternary_convexity import lp


def _float_oracle(P):
    k, d = P.shape
    A = np.vstack([P.T, np.ones(k)])
    b = np.r_[np.zeros(d), 1.0]
    res = linprog(np.zeros(k), A_eq=A, b_eq=b, bounds=[(0, None)] * k, method="highs")
    return res.status == 0


def _check_cert(P, cert):
    assert all(w > 0 for w in cert.values())
    assert sum(cert.values()) == 1
    for j in range(P.shape[1]):
        assert sum(w * int(P[i, j]) for i, w in cert.items()) == 0


def test_phase_one_small():
    lam = lp.phase_one([[1, -1], [1, 1]], [0, 1])
    assert lam == [Fraction(1, 2), Fraction(1, 2)]
    assert lp.phase_one([[1, 2], [1, 1]], [0, 1]) is None


@pytest.mark.parametrize("k,d", [(3, 2), (6, 3), (10, 4), (40, 5)])
def test_origin_in_hull_against_float(k, d, rng):
    for _ in range(40):
        P = rng.integers(-2, 3, size=(k, d))
        cert = lp.origin_in_hull(P)
        assert (cert is not None) == _float_oracle(P)
        if cert is not None:
            _check_cert(P, cert)


def test_float_path_matches_exact_path(rng, monkeypatch):
    cases = [rng.integers(-1, 2, size=(30, 6)) for _ in range(30)]
    fast = [lp.origin_in_hull(P) is not None for P in cases]
    monkeypatch.setattr(lp, "EXACT_DIRECT_MAX_COLS", 10 ** 6)
    slow = [lp.origin_in_hull(P) is not None for P in cases]
    assert fast == slow


def test_origin_row_short_circuit():
    assert lp.origin_in_hull(np.array([[1, 0], [0, 0]])) == {1: Fraction(1)}
