"""Algorithms: the one-sided non-adaptive convexity tester, the low-degree
learner and the testing-by-learning reduction."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .fourier import PHI, fourier_transform, inverse_transform, FourierTable
from .hull import (ViolatingPair, hull_closure, minimize_witness, nearest_convex,
                   up_hull_certificate)
from .ternary import (PointSet, cube_weights, layer_of_weight, Layer, up_indices,
                      up_pair_probability, layer_count)


class MembershipOracle:
    """Counts every index it is asked about."""

    def __init__(self, S: PointSet | Callable[[int], bool], n: int | None = None,
                 record: bool = False):
        if isinstance(S, PointSet):
            self._mask = S.mask
            self.n = S.n
            self._fn = None
        else:
            if n is None:
                raise ValueError("n is required for a callable oracle")
            self._mask = None
            self._fn = S
            self.n = n
        self.queries = 0
        self.log: list[int] | None = [] if record else None

    def query(self, i: int) -> bool:
        self.queries += 1
        if self.log is not None:
            self.log.append(int(i))
        if self._mask is not None:
            return bool(self._mask[i])
        return bool(self._fn(int(i)))

    def query_many(self, indices: np.ndarray) -> np.ndarray:
        indices = np.asarray(indices, dtype=np.int64)
        self.queries += int(indices.size)
        if self.log is not None:
            self.log.extend(int(i) for i in indices)
        if self._mask is not None:
            return self._mask[indices]
        return np.array([bool(self._fn(int(i))) for i in indices], dtype=bool)


@dataclass
class TesterVerdict:
    accept: bool
    witness: ViolatingPair | None
    queries_used: int
    rounds: int
    ell: float

    @property
    def decision(self) -> str:
        return "accept" if self.accept else "reject"


def tester_ell(n: int, eps: float) -> float:
    return math.sqrt(2 * n * math.log(8 / eps))


def tester_rounds(eps: float) -> int:
    return math.ceil(4 / eps)


def round_query_bound(n: int, eps: float) -> int:
    """C(n, k) 3^k with k = 2 ceil(ell), clipped to n."""
    k = min(2 * math.ceil(tester_ell(n, eps)), n)
    return math.comb(n, k) * 3 ** k


def nonadaptive_onesided_test(oracle: MembershipOracle, n: int, eps: float,
                              rng: np.random.Generator) -> TesterVerdict:
    """Each round draws y; if y is in Mid(ell) all of Up(y) n Mid(ell) is
    queried, and the run rejects when y is outside S but inside the hull of
    the queried members of S."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    ell = tester_ell(n, eps)
    rounds = tester_rounds(eps)
    in_mid = np.array([layer_of_weight(w, n, ell) is Layer.MIDDLE for w in range(n + 1)])
    weights = cube_weights(n) if n <= 14 else None
    witness = None
    for _ in range(rounds):
        y = int(rng.integers(0, 3 ** n))
        up = up_indices(y, n)
        wts = weights[up] if weights is not None else np.count_nonzero(
            ((up[:, None] // 3 ** np.arange(n)) % 3), axis=1)
        if not in_mid[wts[0]]:  # up[0] == y has the smallest weight
            oracle.query(y)
            continue
        batch = up[in_mid[wts]]
        answers = oracle.query_many(batch)
        if witness is not None:
            continue
        if answers[0]:  # y itself is the first entry of the batch
            continue
        members = batch[answers]
        cert = up_hull_certificate(y, n, members)
        if cert is not None:
            witness = ViolatingPair(minimize_witness(y, n, cert), y, True)
    return TesterVerdict(witness is None, witness, oracle.queries, rounds, ell)


# ---------------------------------------------------------------- learning

class ExampleStream:
    """Uniform labelled examples (index, +-1) from a set S."""

    def __init__(self, S: PointSet, rng: np.random.Generator, limit: int | None = None):
        self.S = S
        self.rng = rng
        self.limit = limit
        self.drawn = 0

    def draw(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        if self.limit is not None and self.drawn + k > self.limit:
            raise RuntimeError("example stream exhausted")
        self.drawn += k
        idx = self.rng.integers(0, 3 ** self.S.n, size=k)
        return idx, np.where(self.S.mask[idx], 1, -1).astype(np.int8)


def low_degree_size(n: int, tau_deg: int) -> int:
    return sum(math.comb(n, d) * 2 ** d for d in range(min(tau_deg, n) + 1))


def low_degree_sample_count(n: int, eps: float, tau_deg: int) -> int:
    A = low_degree_size(n, tau_deg)
    return math.ceil(Fraction(3 * A * A) / Fraction(eps))


@dataclass
class LowDegreeHypothesis:
    n: int
    tau_deg: int
    Z: np.ndarray  # dense over alpha indices, zero outside A
    samples: int

    def alphas(self) -> np.ndarray:
        return np.flatnonzero(cube_weights(self.n) <= self.tau_deg)

    def scores(self) -> np.ndarray:
        return inverse_transform(FourierTable(self.n, self.Z))

    def values(self) -> np.ndarray:
        """h on every point; sign(0) is +1."""
        return np.where(self.scores() >= 0, 1, -1).astype(np.int8)

    def positive_set(self) -> PointSet:
        return PointSet(self.n, self.values() > 0)


def low_degree_learn(stream, n: int, eps: float, tau_deg: int) -> LowDegreeHypothesis:
    """Estimate Z_alpha = mean of f(x) phi_alpha(x) for every #alpha <= tau_deg."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if not 0 <= tau_deg <= n:
        raise ValueError("need 0 <= tau_deg <= n")
    s = low_degree_sample_count(n, eps, tau_deg)
    totals = np.zeros(3 ** n)
    left = s
    while left:
        k = min(left, 1 << 20)
        idx, lab = stream.draw(k)
        totals += np.bincount(idx, weights=lab.astype(float), minlength=3 ** n)
        left -= k
    # sum_i f(x_i) phi_alpha(x_i) = 3^n * E_x[totals(x) phi_alpha(x)]
    Z = fourier_transform(totals).coefficients * (3 ** n / s)
    Z[cube_weights(n) > tau_deg] = 0.0
    return LowDegreeHypothesis(n, tau_deg, Z, s)


def hypothesis_error_exact(h: LowDegreeHypothesis, S: PointSet) -> Fraction:
    vals = h.values()
    return Fraction(int(np.count_nonzero((vals > 0) != S.mask)), 3 ** S.n)


@dataclass
class LearningTestResult:
    accept: bool
    estimate: float
    samples_used: int
    learner_samples: int
    projection: str
    projected: PointSet = field(repr=False)


def test_by_learning(stream, n: int, eps: float, tau_deg: int | None = None) -> LearningTestResult:
    """Learn at eps/4, move to a convex set, estimate the distance, accept iff <= eps/2.

    The projection is exact for n <= 2; above that the hull closure of the
    hypothesis is used as a convex stand-in.
    """
    tau_deg = n if tau_deg is None else tau_deg
    h = low_degree_learn(stream, n, eps / 4, tau_deg)
    pos = h.positive_set()
    if n <= 2:
        proj, _ = nearest_convex(pos)
        how = "exact"
    else:
        proj = hull_closure(pos)
        how = "closure"
    m = math.ceil(32 / eps)
    idx, lab = stream.draw(m)
    est = float(np.count_nonzero(proj.mask[idx] != (lab > 0))) / m
    return LearningTestResult(est <= eps / 2, est, h.samples + m, h.samples, how, proj)


# ---------------------------------------------------------------- sample based bound

def onesided_sample_witness_probability(n: int, s: int) -> float:
    """Union bound s^2 (5/9)^n on s samples containing a comparable pair."""
    return float(s * s * up_pair_probability(n))


def comparable_pair_frequency(n: int, s: int, trials: int, rng: np.random.Generator) -> float:
    """Monte Carlo frequency of s uniform samples containing y preceding x (distinct draws)."""
    if s < 2:
        return 0.0
    hits = 0
    chunk = max(1, 200_000 // (s * s))
    done = 0
    off = ~np.eye(s, dtype=bool)
    while done < trials:
        k = min(chunk, trials - done)
        pts = rng.integers(-1, 2, size=(k, s, n), dtype=np.int8)
        y = pts[:, :, None, :]
        x = pts[:, None, :, :]
        below = ((y == 0) | (y == x)).all(axis=3) & off
        hits += int(below.any(axis=(1, 2)).sum())
        done += k
    return hits / trials
