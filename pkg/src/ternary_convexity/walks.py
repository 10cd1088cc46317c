"""One-dimensional walks, max-walks, crossing statistics, Sparre Andersen
quantities and the outward cube walk."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .ternary import (PointSet, layer_count, indices_of, sample_middle, weight_band)

DSS_EXHAUSTIVE_MAX = 18


# ---------------------------------------------------------------- step vectors

@dataclass(frozen=True)
class StepVector:
    x: np.ndarray
    dss_certified: bool

    @property
    def m(self) -> int:
        return len(self.x)


def _signed_sums(vals: Sequence[int]) -> np.ndarray:
    s = np.zeros(1, dtype=np.int64)
    for v in vals:
        s = np.concatenate([s, s + v, s - v])
    return s


def has_dss(x: Sequence) -> bool:
    """No nonzero {-1,0,1} combination of x vanishes (equivalently, disjoint
    subsets have distinct sums). Floats are scaled to exact integers first."""
    x = np.asarray(x)
    if np.issubdtype(x.dtype, np.integer):
        ints = [int(v) for v in x]
    else:
        # every float is an exact dyadic rational
        fr = [Fraction(float(v)) for v in x]
        den = max(f.denominator for f in fr) if fr else 1
        ints = [int(f * den) for f in fr]
    if len(ints) > DSS_EXHAUSTIVE_MAX:
        raise ValueError(f"exhaustive check is limited to m <= {DSS_EXHAUSTIVE_MAX}")
    if sum(abs(v) for v in ints) >= 2 ** 62:
        raise ValueError("entries too large for the exact check")
    # meet in the middle: count pairs (a, b) of half sums with a + b == 0;
    # only the all-zero combination may produce one
    h = len(ints) // 2
    va, ca = np.unique(_signed_sums(ints[:h]), return_counts=True)
    vb, cb = np.unique(-_signed_sums(ints[h:]), return_counts=True)
    _, ia, ib = np.intersect1d(va, vb, return_indices=True)
    return int((ca[ia] * cb[ib]).sum()) == 1


def dss_perturb(m: int, rng: np.random.Generator) -> StepVector:
    """x = 1 + z, z uniform on [-1/(3m), 1/(3m)]^m."""
    if m < 1:
        raise ValueError("m must be positive")
    delta = 1.0 / (3 * m)
    x = 1.0 + rng.uniform(-delta, delta, size=m)
    if m <= DSS_EXHAUSTIVE_MAX:
        ok = has_dss(x)
    else:
        # probability one; audited on the walks actually generated
        ok = True
    return StepVector(x, ok)


# ---------------------------------------------------------------- traces

@dataclass(frozen=True)
class WalkTrace:
    values: np.ndarray  # W(0..m)
    a: float | np.ndarray
    sigma: np.ndarray
    eps: np.ndarray


def walk_eval(x: StepVector | np.ndarray, a: float, sigma: np.ndarray, eps: np.ndarray) -> WalkTrace:
    xv = x.x if isinstance(x, StepVector) else np.asarray(x)
    sigma, eps = np.asarray(sigma), np.asarray(eps)
    if not (len(xv) == len(sigma) == len(eps)):
        raise ValueError("length mismatch")
    steps = eps * xv[sigma]
    vals = np.concatenate([[a], a + np.cumsum(steps)]) if len(xv) else np.array([a], float)
    return WalkTrace(vals, a, sigma, eps)


def max_walk(X: Sequence[StepVector | np.ndarray], a: Sequence[float], sigma, eps) -> WalkTrace:
    """Pointwise maximum of walks sharing one permutation and one sign vector."""
    if len(X) != len(a) or not X:
        raise ValueError("need one start value per constituent")
    traces = [walk_eval(x, ai, sigma, eps).values for x, ai in zip(X, a)]
    if len({len(t) for t in traces}) != 1:
        raise ValueError("length mismatch")
    return WalkTrace(np.max(traces, axis=0), np.asarray(a), np.asarray(sigma), np.asarray(eps))


def random_sigma_eps(rng: np.random.Generator, m: int, size: int | None = None):
    if size is None:
        return rng.permutation(m), rng.choice(np.array([-1, 1]), size=m)
    keys = rng.random((size, m))
    return np.argsort(keys, axis=1), rng.choice(np.array([-1, 1]), size=(size, m))


def walk_batch(X: np.ndarray, a: np.ndarray, sigma: np.ndarray, eps: np.ndarray) -> np.ndarray:
    """Max-walk values for a batch.

    X: (k, m) constituents, a: (k,), sigma/eps: (T, m). Returns (T, m+1).
    """
    X = np.atleast_2d(X)
    a = np.atleast_1d(np.asarray(a, dtype=float))
    steps = eps[:, None, :] * X[:, sigma].transpose(1, 0, 2)
    vals = np.concatenate([np.broadcast_to(a[None, :, None], (sigma.shape[0], len(a), 1)),
                           a[None, :, None] + np.cumsum(steps, axis=2)], axis=2)
    return vals.max(axis=1)


# ---------------------------------------------------------------- crossings

@dataclass(frozen=True)
class CrossingStats:
    C: int
    C_down: int
    C_up: int
    L_down: int
    S_down: int
    S_up: int
    Z: int

    def check(self) -> None:
        assert self.C == self.C_down + self.C_up
        assert self.C <= 2 * self.C_down + 1
        assert self.C_down <= self.L_down


def crossing_counts(values: np.ndarray) -> np.ndarray:
    """Vectorised C over the last axis."""
    v = np.asarray(values)
    neg = v < 0
    return np.count_nonzero(neg[..., 1:] != neg[..., :-1], axis=-1)


def crossing_stats(trace: WalkTrace | Sequence[float]) -> CrossingStats:
    """All seven statistics in one left-to-right pass.

    Transitions, per time t = 1..m:
      down(t): W(t) < 0 <= W(t-1);  up(t): W(t) >= 0 > W(t-1).
      L_down : references are W(0) (if W(0) >= 0) and W(s) for each
               upcrossing s; t is a level return when some pending
               reference r has W(t) < r (that reference is consumed).
      S_down : state ARMED(r) or WAIT.  Start ARMED(W(0)) if W(0) >= 0
               else WAIT.  ARMED(r) and W(t) < r: count t, then ARMED(W(t))
               if W(t) >= 0 else WAIT.  WAIT and up(t): ARMED(W(t)).
      S_up   : mirror image: start ARMED(W(0)) if W(0) < 0 else WAIT;
               ARMED(r) and W(t) > r: count t, then ARMED(W(t)) if
               W(t) < 0 else WAIT.  WAIT and down(t): ARMED(W(t)).
      Z      : W(t) in {0, +1, -1}.
    """
    W = trace.values if isinstance(trace, WalkTrace) else trace
    W = [float(w) for w in W]
    c_down = c_up = l_down = s_down = s_up = z = 0
    pending: list[float] = [W[0]] if W[0] >= 0 else []
    dn_armed, dn_ref = (True, W[0]) if W[0] >= 0 else (False, 0.0)
    up_armed, up_ref = (True, W[0]) if W[0] < 0 else (False, 0.0)
    for t in range(1, len(W)):
        w, prev = W[t], W[t - 1]
        is_down = w < 0 <= prev
        is_up = w >= 0 > prev
        c_down += is_down
        c_up += is_up
        if w in (0.0, 1.0, -1.0):
            z += 1
        # level returns
        if pending:
            left = [r for r in pending if not w < r]
            if len(left) != len(pending):
                l_down += 1
            pending = left
        if is_up:
            pending.append(w)
        # level decreases
        if dn_armed:
            if w < dn_ref:
                s_down += 1
                dn_armed, dn_ref = (True, w) if w >= 0 else (False, 0.0)
        elif is_up:
            dn_armed, dn_ref = True, w
        # level increases
        if up_armed:
            if w > up_ref:
                s_up += 1
                up_armed, up_ref = (True, w) if w < 0 else (False, 0.0)
        elif is_down:
            up_armed, up_ref = True, w
    return CrossingStats(c_down + c_up, c_down, c_up, l_down, s_down, s_up, z)


# ---------------------------------------------------------------- Sparre Andersen

def sparre_andersen_g(m: int) -> Fraction:
    if m < 0:
        raise ValueError("m must be non-negative")
    return Fraction(math.comb(2 * m, m), 4 ** m)


def all_positive_probability(x: StepVector, trials: int, rng: np.random.Generator,
                             chunk: int = 50_000) -> float:
    """Frequency of W_x(t) > 0 for every t in [m] over random (sigma, eps)."""
    if not x.dss_certified:
        raise ValueError("step vector is not certified DSS")
    m = x.m
    hits = 0
    done = 0
    while done < trials:
        k = min(chunk, trials - done)
        sigma, eps = random_sigma_eps(rng, m, k)
        W = np.cumsum(eps * x.x[sigma], axis=1)
        hits += int((W > 0).all(axis=1).sum())
        done += k
    return hits / trials


def R_pmf(t: int) -> Fraction:
    if t < 1:
        return Fraction(0)
    return sparre_andersen_g(t - 1) - sparre_andersen_g(t)


def _log_g(t: int) -> float:
    return math.lgamma(2 * t + 1) - 2 * math.lgamma(t + 1) - t * math.log(4)


def sample_R(rng: np.random.Generator, cap: int | None = None) -> int:
    """Inverse CDF on P[R > t] = g(t): R is the first t with g(t) < U."""
    u = rng.random()
    if u >= 0.5:
        return 1
    lu = math.log(u)
    hi = 2
    while _log_g(hi) >= lu:
        if cap is not None and hi > cap:
            return cap + 1
        hi *= 2
    lo = hi // 2  # g(lo) >= u
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _log_g(mid) >= lu:
            lo = mid
        else:
            hi = mid
    return hi if cap is None else min(hi, cap + 1)


def sample_Q(m: int, rng: np.random.Generator) -> int:
    """Number of renewal epochs R_1 + ... + R_k that land in [1, m]."""
    q, X = 0, 0
    while True:
        X += sample_R(rng, cap=m)
        if X > m:
            return q
        q += 1


@lru_cache(maxsize=None)
def expected_Q(m: int) -> Fraction:
    """E[Q^(m)] by the renewal recursion, exactly."""
    if m <= 0:
        return Fraction(0)
    return sum((R_pmf(t) * (1 + expected_Q(m - t)) for t in range(1, m + 1)), Fraction(0))


# ---------------------------------------------------------------- cube walk

@dataclass(frozen=True)
class CubeWalkParams:
    n: int
    ell: float
    m: int

    @classmethod
    def for_n(cls, n: int) -> "CubeWalkParams":
        if n < 3:
            raise ValueError("n must be at least 3")
        ell = math.sqrt(2 * n * math.log(n))
        m = max(1, round(math.sqrt(n / math.log(n))))
        return cls(n, ell, m)

    def start_weights(self) -> list[int]:
        """Weights allowed for X(0): inside Mid(ell) with at least m zeros."""
        lo, hi = weight_band(self.n, self.ell)
        return [w for w in range(lo, hi + 1) if self.n - w >= self.m]

    def start_count(self) -> int:
        return sum(layer_count(self.n, w) for w in self.start_weights())


@dataclass
class CubeWalkBatch:
    """Realisations of the outward walk: X(0), the m walked coordinates in
    order, the signs and the chosen step s (1-based)."""
    params: CubeWalkParams
    x0: np.ndarray      # (T, n) int8
    coords: np.ndarray  # (T, m)
    eps: np.ndarray     # (T, m)
    s: np.ndarray       # (T,)
    rejected: int

    def points(self, step: int) -> np.ndarray:
        """X(step) for every realisation."""
        X = self.x0.copy()
        rows = np.arange(len(X))
        for j in range(step):
            X[rows, self.coords[:, j]] = self.eps[:, j]
        return X

    def path_indices(self) -> np.ndarray:
        out = [indices_of(self.x0)]
        X = self.x0.copy()
        rows = np.arange(len(X))
        for j in range(self.params.m):
            X[rows, self.coords[:, j]] = self.eps[:, j]
            out.append(indices_of(X))
        return np.stack(out, axis=1)


def cube_walk_batch(n: int, rng: np.random.Generator, size: int,
                    params: CubeWalkParams | None = None) -> CubeWalkBatch:
    p = params or CubeWalkParams.for_n(n)
    xs, rejected, have = [], 0, 0
    while have < size:
        pts = sample_middle(rng, n, p.ell, size=size - have)
        ok = (n - np.count_nonzero(pts, axis=1)) >= p.m
        rejected += int((~ok).sum())
        xs.append(pts[ok])
        have += int(ok.sum())
    x0 = np.concatenate(xs)[:size]
    # random ordered m-subset of the zero coordinates: rank zeros by random keys
    keys = rng.random((size, n))
    keys[x0 != 0] = 2.0
    coords = np.argsort(keys, axis=1)[:, :p.m]
    eps = rng.choice(np.array([-1, 1], dtype=np.int8), size=(size, p.m))
    s = rng.integers(1, p.m + 1, size=size)
    return CubeWalkBatch(p, x0, coords, eps, s, rejected)


@dataclass(frozen=True)
class CubeWalkSample:
    path: np.ndarray  # indices X(0..m)
    s: int
    edge: tuple[int, int]
    crossed: bool


def cube_walk_sample(n: int, S: PointSet, rng: np.random.Generator) -> CubeWalkSample:
    b = cube_walk_batch(n, rng, 1)
    path = b.path_indices()[0]
    s = int(b.s[0])
    u, v = int(path[s - 1]), int(path[s])
    return CubeWalkSample(path, s, (u, v), bool(S.mask[u] != S.mask[v]))


def point_probability(n: int, z_weight: int, s: int, params: CubeWalkParams | None = None,
                      normalise: bool = True) -> Fraction:
    """P[X(s) = z] for z of the given weight.

    The raw expression is 3^-n 2^-s C(n, w-s) / C(n, w); with normalise the
    3^-n is replaced by one over the number of admissible starting points.
    """
    p = params or CubeWalkParams.for_n(n)
    w0 = z_weight - s
    if w0 not in p.start_weights():
        return Fraction(0)
    base = Fraction(math.comb(n, w0), math.comb(n, z_weight) * 2 ** s)
    return base / (p.start_count() if normalise else 3 ** n)


# ---------------------------------------------------------------- halfspace reduction

@dataclass
class HalfspaceFamily:
    """S = intersection of {x : <v, x> < tau(v)} with integer normals and
    half-integer thresholds (so no grid point sits on a boundary)."""
    V: np.ndarray    # (k, n) int64
    tau: np.ndarray  # (k,) float, integer + 1/2

    def contains(self, pts: np.ndarray) -> np.ndarray:
        return (pts.astype(np.int64) @ self.V.T < self.tau).all(axis=-1)

    def point_set(self, n: int) -> PointSet:
        from .ternary import cube_trits
        return PointSet(n, self.contains(cube_trits(n)))


def dss_halfspaces(n: int, k: int, rng: np.random.Generator, scale: int = 2 ** 20) -> HalfspaceFamily:
    """k halfspaces with random sign normals perturbed to have the DSS property."""
    span = scale // (3 * n)
    rows = []
    while len(rows) < k:
        v = rng.choice(np.array([-1, 1]), size=n) * scale + rng.integers(-span, span + 1, size=n)
        if has_dss(v):
            rows.append(v.astype(np.int64))
    V = np.array(rows)
    # each halfspace keeps most of the middle layers; offset by 1/2
    centre = rng.normal(1.0, 0.5, size=k) * math.sqrt(2 * n / 3) * scale
    tau = np.floor(centre) + 0.5
    return HalfspaceFamily(V, tau)


def halfspace_walk_reduction(fam: HalfspaceFamily, batch: CubeWalkBatch) -> tuple[np.ndarray, np.ndarray]:
    """Constituent walks W_v^{+a(v)} with a(v) = <v, X(0)> - tau(v).

    Returns (max-walk values (T, m+1), direct membership of X(0..m) (T, m+1)).
    """
    T, m = batch.coords.shape
    a = batch.x0.astype(np.int64) @ fam.V.T - fam.tau  # (T, k)
    steps = batch.eps[:, None, :].astype(np.int64) * fam.V.T[batch.coords].transpose(0, 2, 1)
    walks = np.concatenate([a[:, :, None], a[:, :, None] + np.cumsum(steps, axis=2)], axis=2)
    M = walks.max(axis=1)
    members = np.empty((T, m + 1), dtype=bool)
    for j in range(m + 1):
        members[:, j] = fam.contains(batch.points(j))
    return M, members
