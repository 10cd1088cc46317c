"""Instance families: halfspaces, balls, slabs, truncated anti-slabs, random
halfspace intersections and the Talagrand-style yes/no distributions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .ternary import (Layer, PointSet, cube_trits, cube_weights, layer_masks,
                      trits_of)


@dataclass(frozen=True)
class Halfspace:
    """{x : <v, x> < tau}"""
    v: tuple
    tau: float

    def members(self, trits: np.ndarray) -> np.ndarray:
        return trits @ np.asarray(self.v) < self.tau


def make_halfspace_set(v, tau, n: int) -> PointSet:
    v = np.asarray(v)
    if v.shape != (n,):
        raise ValueError("normal vector has the wrong length")
    return PointSet(n, cube_trits(n) @ v < tau)


def make_ball(r, n: int) -> PointSet:
    """B_r = {x : |x|_2^2 < r}; on the grid |x|_2^2 is the weight."""
    return PointSet(n, cube_weights(n) < r)


@dataclass(frozen=True)
class SlabSpec:
    v: tuple
    tau: float


def make_slab(spec: SlabSpec, n: int) -> PointSet:
    return PointSet(n, np.abs(cube_trits(n) @ np.asarray(spec.v, dtype=np.int64)) <= spec.tau)


def make_antislab(spec: SlabSpec, n: int) -> PointSet:
    return make_slab(spec, n).complement()


@dataclass(frozen=True)
class TasSpec:
    v: tuple
    tau: float
    t: float

    @classmethod
    def standard(cls, n: int, rng: np.random.Generator) -> "TasSpec":
        """|v|_1 = floor(n/2), tau = sqrt(n), t = 0.7 sqrt(n)."""
        support = rng.choice(n, size=n // 2, replace=False)
        v = np.zeros(n, dtype=np.int64)
        v[support] = rng.choice([-1, 1], size=n // 2)
        return cls(tuple(int(a) for a in v), math.sqrt(n), 0.7 * math.sqrt(n))


def make_tas(spec: TasSpec, n: int) -> PointSet:
    anti = make_antislab(SlabSpec(spec.v, spec.tau), n).mask
    layers = layer_masks(n, spec.t)
    return PointSet(n, (anti | layers[Layer.INNER]) & ~layers[Layer.OUTER])


# ---------------------------------------------------------------- density profile

def rademacher_tail(w: int, tau) -> Fraction:
    """P[z_1 + ... + z_w > tau] for z uniform in {+-1}^w, exactly."""
    hits = sum(math.comb(w, j) for j in range(w + 1) if 2 * j - w > tau)
    return Fraction(hits, 2 ** w)


@dataclass
class DensityProfile:
    n: int
    tau: float
    rows: list = field(default_factory=list)  # (ell, weight, rho)

    @property
    def ratio(self) -> float:
        vals = [r for _, _, r in self.rows]
        lo = min(vals)
        return math.inf if lo == 0 else float(max(vals) / lo)


def density_profile(n: int, tau) -> DensityProfile:
    """rho(ell, tau) for every integral weight 2n/3 + ell with |ell| <= sqrt(n)."""
    prof = DensityProfile(n, tau)
    root = math.sqrt(n)
    for w in range(n + 1):
        ell = Fraction(3 * w - 2 * n, 3)
        if abs(ell) <= root:
            prof.rows.append((ell, w, rademacher_tail(w, tau)))
    return prof


# ---------------------------------------------------------------- high influence construction

@dataclass
class HalfspaceIntersection:
    n: int
    tau: int
    rho: Fraction
    eps: float
    k: int
    normals: np.ndarray  # k x n entries in {+-1}
    set: PointSet


def intersection_threshold(n: int, eps: float) -> tuple[int, Fraction]:
    """Largest integer tau with P[sum of floor(2n/3) signs > tau] >= eps."""
    w = (2 * n) // 3
    best = None
    for t in range(-w - 1, w + 1):
        tail = rademacher_tail(w, t)
        if tail >= eps:
            best = (t, tail)
    assert best is not None
    return best


def make_random_halfspace_intersection(n: int, rng: np.random.Generator, *, C1: float = 5.0,
                                       k: int | None = None,
                                       eps: float | None = None) -> HalfspaceIntersection:
    eps = 2.0 ** (-math.sqrt(n)) if eps is None else eps
    tau, rho = intersection_threshold(n, eps)
    if k is None:
        k = max(int(math.floor(1.0 / (4 * C1 * float(rho)))), 1)
    V = rng.choice(np.array([-1, 1], dtype=np.int64), size=(k, n))
    dots = cube_trits(n).astype(np.int64) @ V.T
    inside = (dots <= tau).all(axis=1)
    return HalfspaceIntersection(n, tau, rho, eps, k, V, PointSet(n, inside))


# ---------------------------------------------------------------- Talagrand yes / no

@dataclass(frozen=True)
class TalagrandParams:
    n: int
    w: int
    N: int
    band: int

    @classmethod
    def default(cls, n: int, N: int | None = None) -> "TalagrandParams":
        w = math.ceil(math.sqrt(n))
        return cls(n, w, 3 ** w if N is None else N, w)


def sample_terms(params: TalagrandParams, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """N terms, each w literals (coordinate, sign) sampled with replacement."""
    coords = rng.integers(0, params.n, size=(params.N, params.w))
    signs = rng.choice(np.array([-1, 1], dtype=np.int8), size=(params.N, params.w))
    return coords, signs


def satisfied_terms(points: np.ndarray, coords: np.ndarray, signs: np.ndarray) -> np.ndarray:
    """Boolean (num_points, N): does x satisfy every literal of term i.

    A term holding both signs on one coordinate is never satisfied.
    """
    N, w = coords.shape
    sat = np.ones((points.shape[0], N), dtype=bool)
    for j in range(w):
        sat &= points[:, coords[:, j]] == signs[None, :, j]
    return sat


def term_vector(coords: np.ndarray, signs: np.ndarray, n: int) -> np.ndarray | None:
    """The term as a point of the cube, or None for a contradictory term."""
    t = np.zeros(n, dtype=np.int8)
    for a, s in zip(coords, signs):
        if t[a] == -s:
            return None
        t[a] = s
    return t


@dataclass
class TalagrandInstance:
    params: TalagrandParams
    coords: np.ndarray
    signs: np.ndarray
    bucket: np.ndarray  # per index: -3 outside Mid, -1 no term, -2 several, else i
    labels: np.ndarray  # phi (per term) for yes draws, r (per point of U) for no draws
    kind: str
    set: PointSet

    def U(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.bucket == i)


def talagrand_buckets(params: TalagrandParams, coords, signs) -> np.ndarray:
    n = params.n
    trits = cube_trits(n)
    mid = layer_masks(n, params.band)[Layer.MIDDLE]
    bucket = np.full(3 ** n, -3, dtype=np.int64)
    idx = np.flatnonzero(mid)
    chunk = 1 << 15
    for start in range(0, idx.size, chunk):
        part = idx[start:start + chunk]
        sat = satisfied_terms(trits[part], coords, signs)
        cnt = sat.sum(axis=1)
        b = np.where(cnt == 0, -1, np.where(cnt >= 2, -2, sat.argmax(axis=1)))
        bucket[part] = b
    return bucket


def _assemble(params, bucket, inside_U) -> PointSet:
    layers = layer_masks(params.n, params.band)
    mask = layers[Layer.INNER] | (bucket == -1) | inside_U
    return PointSet(params.n, mask)


def sample_dyes(n: int, rng: np.random.Generator, params: TalagrandParams | None = None,
                terms=None) -> TalagrandInstance:
    params = params or TalagrandParams.default(n)
    coords, signs = terms if terms is not None else sample_terms(params, rng)
    bucket = talagrand_buckets(params, coords, signs)
    phi = rng.integers(0, 2, size=params.N).astype(bool)
    inside_U = (bucket >= 0) & phi[np.clip(bucket, 0, None)]
    return TalagrandInstance(params, coords, signs, bucket, phi, "yes",
                             _assemble(params, bucket, inside_U))


def sample_dno(n: int, rng: np.random.Generator, params: TalagrandParams | None = None,
               terms=None) -> TalagrandInstance:
    params = params or TalagrandParams.default(n)
    coords, signs = terms if terms is not None else sample_terms(params, rng)
    bucket = talagrand_buckets(params, coords, signs)
    r = rng.integers(0, 2, size=3 ** n).astype(bool)
    inside_U = (bucket >= 0) & r
    return TalagrandInstance(params, coords, signs, bucket, r, "no",
                             _assemble(params, bucket, inside_U))


def sample_buckets(points: np.ndarray, params: TalagrandParams, coords, signs) -> np.ndarray:
    """Bucket label of arbitrary points (same convention as talagrand_buckets)."""
    w = np.count_nonzero(points, axis=1)
    dev = 3 * w - 2 * params.n
    mid = np.abs(dev) <= 3 * params.band
    sat = satisfied_terms(points, coords, signs)
    cnt = sat.sum(axis=1)
    b = np.where(cnt == 0, -1, np.where(cnt >= 2, -2, sat.argmax(axis=1)))
    return np.where(mid, b, -3)


def collision_statistic(n: int, s: int, rng: np.random.Generator, trials: int = 10_000,
                        params: TalagrandParams | None = None) -> tuple[float, float]:
    """Estimate P[two of s uniform samples share a bucket U_i].

    Terms are redrawn every trial. Returns (estimate, bound 25 s^2 / N).
    """
    if s < 2:
        raise ValueError("need s >= 2")
    params = params or TalagrandParams.default(n)
    hits = 0
    for _ in range(trials):
        coords, signs = sample_terms(params, rng)
        pts = rng.integers(-1, 2, size=(s, n), dtype=np.int8)
        b = sample_buckets(pts, params, coords, signs)
        b = b[b >= 0]
        if b.size != np.unique(b).size:
            hits += 1
    est = hits / trials
    bound = 25 * s * s / params.N
    assert est <= bound, (est, bound)
    return est, bound


def single_bucket_probability(n: int, rng: np.random.Generator, trials: int = 10_000,
                              params: TalagrandParams | None = None) -> float:
    """Estimate P[y in U_i] for a fixed i (averaged over i by symmetry)."""
    params = params or TalagrandParams.default(n)
    hits = 0
    for _ in range(trials):
        coords, signs = sample_terms(params, rng)
        pt = rng.integers(-1, 2, size=(1, n), dtype=np.int8)
        hits += int(sample_buckets(pt, params, coords, signs)[0] >= 0)
    return hits / trials / params.N
