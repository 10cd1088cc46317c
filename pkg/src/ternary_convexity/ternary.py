"""Points, indices, sets and layers of the ternary cube {0, +1, -1}^n.

A point is stored by its index: little-endian base 3 with digit 0 -> 0,
digit 1 -> +1 and digit 2 -> -1. Coordinate i therefore lives at place
value 3**i and flipping it is a single digit update.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

TABLE_MAX_N = 14

# digit -> trit and trit -> digit lookups
DIGIT_TO_TRIT = np.array([0, 1, -1], dtype=np.int8)


def trit_to_digit(t: int) -> int:
    return t % 3


def _check_trits(x: Sequence[int]) -> None:
    for t in x:
        if t not in (-1, 0, 1):
            raise ValueError(f"trit outside {{-1, 0, 1}}: {t!r}")


def encode(x: Sequence[int]) -> int:
    """Index of the point ``x``."""
    _check_trits(x)
    idx = 0
    for i in range(len(x) - 1, -1, -1):
        idx = 3 * idx + int(x[i]) % 3
    return idx


def decode(i: int, n: int) -> tuple[int, ...]:
    if not 0 <= i < 3 ** n:
        raise ValueError(f"index {i} out of range for n={n}")
    out = []
    for _ in range(n):
        i, d = divmod(i, 3)
        out.append((0, 1, -1)[d])
    return tuple(out)


def weight(x: Sequence[int]) -> int:
    return sum(1 for t in x if t != 0)


def digits_of(indices: np.ndarray, n: int) -> np.ndarray:
    """Base-3 digits of each index, shape (len(indices), n)."""
    indices = np.asarray(indices, dtype=np.int64)
    out = np.empty(indices.shape + (n,), dtype=np.int8)
    rest = indices.copy()
    for i in range(n):
        out[..., i] = rest % 3
        rest //= 3
    return out


def trits_of(indices: np.ndarray, n: int) -> np.ndarray:
    """Vectorised decode."""
    if n <= TABLE_MAX_N:
        return cube_trits(n)[np.asarray(indices, dtype=np.int64)]
    return DIGIT_TO_TRIT[digits_of(indices, n)]


def indices_of(trits: np.ndarray) -> np.ndarray:
    """Vectorised encode of an array of points with shape (..., n)."""
    trits = np.asarray(trits)
    n = trits.shape[-1]
    place = 3 ** np.arange(n, dtype=np.int64)
    return (np.mod(trits, 3).astype(np.int64) * place).sum(axis=-1)


@lru_cache(maxsize=None)
def _cube_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n > TABLE_MAX_N:
        raise ValueError(f"dense tables are capped at n={TABLE_MAX_N}")
    size = 3 ** n
    trits = np.empty((size, n), dtype=np.int8)
    idx = np.arange(size, dtype=np.int64)
    for i in range(n):
        trits[:, i] = DIGIT_TO_TRIT[(idx // 3 ** i) % 3]
    weights = np.count_nonzero(trits, axis=1).astype(np.int16)
    trits.flags.writeable = False
    weights.flags.writeable = False
    return trits, weights


def cube_trits(n: int) -> np.ndarray:
    """All 3^n points as an int8 array, row i is decode(i, n)."""
    return _cube_tables(n)[0]


def cube_weights(n: int) -> np.ndarray:
    return _cube_tables(n)[1]


def layer_count(n: int, w: int) -> int:
    """Number of points of weight w."""
    if not 0 <= w <= n:
        return 0
    return math.comb(n, w) * 2 ** w


# ---------------------------------------------------------------- edges

def edges(n: int) -> Iterator[tuple[int, int]]:
    """Outward edges (u, v): u_i = 0, v_i = +-1, equal elsewhere.

    Every adjacent pair is produced once, so there are 2n * 3^(n-1) of them.
    """
    if n < 1:
        raise ValueError("n must be positive")
    for u in range(3 ** n):
        rest = u
        for i in range(n):
            rest, d = divmod(rest, 3)
            if d == 0:
                p = 3 ** i
                yield u, u + p
                yield u, u + 2 * p


def edge_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised version of :func:`edges` (same pairs, grouped by axis)."""
    us, vs = [], []
    idx = np.arange(3 ** n, dtype=np.int64)
    for i in range(n):
        p = 3 ** i
        base = idx[(idx // p) % 3 == 0]
        us += [base, base]
        vs += [base + p, base + 2 * p]
    return np.concatenate(us), np.concatenate(vs)


def edge_count(n: int) -> int:
    return 2 * n * 3 ** (n - 1)


# ---------------------------------------------------------------- poset

def poset_leq(y: Sequence[int], x: Sequence[int]) -> bool:
    """y precedes x: every nonzero coordinate of y agrees with x."""
    if len(y) != len(x):
        raise ValueError("dimension mismatch")
    return all(a == 0 or a == b for a, b in zip(y, x))


@lru_cache(maxsize=4096)
def _offsets_for_zero_mask(n: int, zmask: int) -> np.ndarray:
    offs = np.zeros(1, dtype=np.int64)
    for i in range(n):
        if zmask >> i & 1:
            p = 3 ** i
            offs = np.concatenate([offs, offs + p, offs + 2 * p])
    offs.sort()
    offs.flags.writeable = False
    return offs


def zero_mask(index: int, n: int) -> int:
    m = 0
    for i in range(n):
        index, d = divmod(index, 3)
        if d == 0:
            m |= 1 << i
    return m


def up_indices(y: int, n: int) -> np.ndarray:
    """Sorted indices of Up(y)."""
    return y + _offsets_for_zero_mask(n, zero_mask(y, n))


def up_shadow(y: Sequence[int]) -> "PointSet":
    n = len(y)
    return PointSet.from_indices(n, up_indices(encode(y), n))


def comparable_pair_count(n: int) -> int:
    """Exhaustive count of pairs (x, y) with y preceding x."""
    w = cube_weights(n).astype(np.int64)
    return int((3 ** (n - w)).sum())


def up_pair_probability(n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Fraction(5, 9) ** n


# ---------------------------------------------------------------- layers

class Layer(enum.Enum):
    INNER = "inner"
    MIDDLE = "middle"
    OUTER = "outer"


def _as_fraction(tau) -> Fraction:
    if tau < 0:
        raise ValueError("tau must be non-negative")
    return Fraction(tau)


def layer_of_weight(w: int, n: int, tau) -> Layer:
    # compare 3w - 2n with 3 tau exactly
    dev = Fraction(3 * w - 2 * n)
    t3 = 3 * _as_fraction(tau)
    if dev < -t3:
        return Layer.INNER
    if dev > t3:
        return Layer.OUTER
    return Layer.MIDDLE


def layer_classify(x: Sequence[int], tau) -> Layer:
    return layer_of_weight(weight(x), len(x), tau)


def weight_band(n: int, tau) -> tuple[int, int]:
    """Smallest and largest weight inside Mid(tau)."""
    ws = [w for w in range(n + 1) if layer_of_weight(w, n, tau) is Layer.MIDDLE]
    if not ws:
        raise ValueError(f"Mid({tau}) is empty for n={n}")
    return ws[0], ws[-1]


def layer_masks(n: int, tau) -> dict[Layer, np.ndarray]:
    """Boolean masks over all 3^n indices for the three layers."""
    tags = np.array([layer_of_weight(w, n, tau).value for w in range(n + 1)])
    per_point = tags[cube_weights(n)]
    return {lay: per_point == lay.value for lay in Layer}


def middle_mask(n: int, tau) -> np.ndarray:
    try:
        lo, hi = weight_band(n, tau)
    except ValueError:
        return np.zeros(3 ** n, dtype=bool)
    w = cube_weights(n)
    return (w >= lo) & (w <= hi)


def concentration_check(n: int, tau) -> tuple[Fraction, float]:
    """Exact P[| |x|_1 - 2n/3 | > tau] next to the bound 2 exp(-tau^2 / 2n)."""
    t = _as_fraction(tau)
    bad = 0
    for w in range(n + 1):
        if abs(Fraction(3 * w - 2 * n, 3)) > t:
            bad += layer_count(n, w)
    mass = Fraction(bad, 3 ** n)
    bound = 2.0 * math.exp(-float(tau) ** 2 / (2 * n)) if n > 0 else 2.0
    assert mass <= bound, (n, tau, mass, bound)
    return mass, bound


# ---------------------------------------------------------------- sampling

def sample_uniform(rng: np.random.Generator, n: int, size: int | None = None) -> np.ndarray:
    """Uniform point(s) of the cube as trit arrays."""
    shape = (n,) if size is None else (size, n)
    return rng.integers(-1, 2, size=shape, dtype=np.int8)


def sample_uniform_indices(rng: np.random.Generator, n: int, size: int | None = None):
    return rng.integers(0, 3 ** n, size=size, dtype=np.int64)


def sample_middle(rng: np.random.Generator, n: int, tau, size: int | None = None) -> np.ndarray:
    """Uniform point(s) of Mid(tau).

    First a weight is drawn with probability proportional to C(n, w) 2^w over
    the band, then a uniform point of that weight.
    """
    lo, hi = weight_band(n, tau)
    ws = np.arange(lo, hi + 1)
    counts = np.array([layer_count(n, int(w)) for w in ws], dtype=float)
    k = 1 if size is None else size
    chosen = rng.choice(ws, size=k, p=counts / counts.sum())
    # random support of the chosen size: rank coordinates by a random key
    keys = rng.random((k, n))
    ranks = np.argsort(np.argsort(keys, axis=1), axis=1)
    support = ranks < chosen[:, None]
    signs = np.where(rng.random((k, n)) < 0.5, 1, -1).astype(np.int8)
    pts = np.where(support, signs, 0).astype(np.int8)
    return pts[0] if size is None else pts


# ---------------------------------------------------------------- sets

class PointSet:
    """A subset of {0,+-1}^n as a dense membership mask over indices."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (3 ** n,):
            raise ValueError(f"mask must have length 3^{n}")
        self.n = n
        self.mask = mask

    @classmethod
    def empty(cls, n: int) -> "PointSet":
        return cls(n, np.zeros(3 ** n, dtype=bool))

    @classmethod
    def full(cls, n: int) -> "PointSet":
        return cls(n, np.ones(3 ** n, dtype=bool))

    @classmethod
    def from_indices(cls, n: int, indices) -> "PointSet":
        mask = np.zeros(3 ** n, dtype=bool)
        idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices,
                         dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= 3 ** n):
            raise ValueError("index out of range")
        mask[idx] = True
        return cls(n, mask)

    @classmethod
    def from_points(cls, points: Sequence[Sequence[int]], n: int | None = None) -> "PointSet":
        points = list(points)
        if n is None:
            n = len(points[0])
        return cls.from_indices(n, [encode(p) for p in points])

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def points(self) -> list[tuple[int, ...]]:
        return [decode(int(i), self.n) for i in self.indices()]

    def __len__(self) -> int:
        return int(np.count_nonzero(self.mask))

    def __contains__(self, x) -> bool:
        i = x if isinstance(x, (int, np.integer)) else encode(x)
        return bool(self.mask[i])

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.n == other.n and \
            bool(np.array_equal(self.mask, other.mask))

    def __hash__(self):
        return hash((self.n, self.mask.tobytes()))

    def __repr__(self) -> str:
        return f"PointSet(n={self.n}, size={len(self)})"

    def complement(self) -> "PointSet":
        return PointSet(self.n, ~self.mask)

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.n, self.mask | other.mask)

    def __and__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.n, self.mask & other.mask)

    def __sub__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.n, self.mask & ~other.mask)

    def symmetric_difference_size(self, other: "PointSet") -> int:
        return int(np.count_nonzero(self.mask ^ other.mask))

    def restrict(self, keep: np.ndarray) -> "PointSet":
        return PointSet(self.n, self.mask & keep)

    def copy(self) -> "PointSet":
        return PointSet(self.n, self.mask.copy())


def point_set_from_mask(n: int, mask) -> PointSet:
    return PointSet(n, mask)
