"""Discrete convexity: hull membership, closures, violating pairs, distances."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import lp
from .ternary import (PointSet, cube_trits, encode, middle_mask, trits_of, up_indices,
                      zero_mask, decode)
from ._packer import pack_triples


@dataclass(frozen=True)
class HullCertificate:
    """y = sum lam * x over the support, lam > 0, sum lam = 1."""
    support: tuple[tuple[int, Fraction], ...]

    def replay(self, n: int) -> tuple[tuple[Fraction, ...], Fraction]:
        total = Fraction(0)
        acc = [Fraction(0)] * n
        for idx, lam in self.support:
            total += lam
            for i, t in enumerate(decode(idx, n)):
                acc[i] += lam * t
        return tuple(acc), total


@dataclass(frozen=True)
class ViolatingPair:
    X: tuple[int, ...]
    y: int
    minimal: bool


def in_hull(y: Sequence[int], X: Sequence[Sequence[int]]) -> tuple[bool, HullCertificate | None]:
    """Exact decision of y in Conv(X), with a certificate when true."""
    X = [tuple(x) for x in X]
    if not X:
        raise ValueError("X must be nonempty")
    n = len(y)
    if any(len(x) != n for x in X):
        raise ValueError("dimension mismatch")
    P = np.array(X, dtype=np.int64) - np.asarray(y, dtype=np.int64)
    cert = lp.origin_in_hull(P)
    if cert is None:
        return False, None
    support = tuple(sorted((encode(X[j]), lam) for j, lam in cert.items()))
    return True, HullCertificate(support)


def up_hull_certificate(y: int, n: int, members: np.ndarray) -> dict[int, Fraction] | None:
    """y in Conv(members), all members taken from Up(y) and different from y.

    Points of Up(y) agree with y off the zero set Z of y, so the question
    reduces to 0 in conv of the members restricted to Z.
    """
    if members.size == 0:
        return None
    zm = zero_mask(y, n)
    Z = [i for i in range(n) if zm >> i & 1]
    P = trits_of(members, n)[:, Z]
    cert = lp.origin_in_hull(P)
    if cert is None:
        return None
    return {int(members[j]): lam for j, lam in cert.items()}


def _members_above(S: PointSet, y: int) -> np.ndarray:
    up = up_indices(y, S.n)
    up = up[S.mask[up]]
    return up[up != y]


def in_closure(S: PointSet, y: int) -> dict[int, Fraction] | None:
    """Certificate that y lies in Conv(S intersect Up(y)), else None."""
    return up_hull_certificate(y, S.n, _members_above(S, y))


def hull_closure(S: PointSet) -> PointSet:
    """Conv(S) intersected with the grid.

    A minimal witness for y lies in Up(y), so each candidate y outside S is
    tested against S intersect Up(y) only.
    """
    n = S.n
    out = S.mask.copy()
    for y in np.flatnonzero(~S.mask):
        y = int(y)
        if in_closure(S, y) is not None:
            out[y] = True
    return PointSet(n, out)


def is_convex(S: PointSet) -> bool:
    for y in np.flatnonzero(~S.mask):
        if in_closure(S, int(y)) is not None:
            return False
    return True


def is_poset_down_closed(S: PointSet) -> bool:
    """No point of S lies above a point outside S (then S is convex)."""
    n = S.n
    trits = cube_trits(n)
    for i in range(n):
        # compare x with x_i set to zero
        p = 3 ** i
        idx = np.flatnonzero(trits[:, i] != 0)
        lower = idx - ((idx // p) % 3) * p
        if (S.mask[idx] & ~S.mask[lower]).any():
            return False
    return True


def minimize_witness(y: int, n: int, support: Sequence[int]) -> tuple[int, ...]:
    """Drop support points in ascending index order while y stays in the hull."""
    X = sorted(int(s) for s in support)
    for idx in list(X):
        trial = [x for x in X if x != idx]
        if trial and up_hull_certificate(y, n, np.array(trial, dtype=np.int64)) is not None:
            X = trial
    return tuple(X)


def find_minimal_violating_pair(S: PointSet) -> ViolatingPair | None:
    for y in np.flatnonzero(~S.mask):
        y = int(y)
        cert = in_closure(S, y)
        if cert is not None:
            return ViolatingPair(minimize_witness(y, S.n, cert), y, True)
    return None


def verify_violating_pair(S: PointSet, pair: ViolatingPair) -> bool:
    n = S.n
    if S.mask[pair.y] or not all(S.mask[x] for x in pair.X):
        return False
    ok, _ = in_hull(decode(pair.y, n), [decode(x, n) for x in pair.X])
    return ok


# ---------------------------------------------------------------- distances

@lru_cache(maxsize=None)
def _convex_masks(n: int) -> np.ndarray:
    if n > 2:
        raise ValueError(f"exact distance is only supported for n <= 2 (got n={n})")
    size = 3 ** n
    out = []
    for code in range(2 ** size):
        mask = np.array([(code >> i) & 1 for i in range(size)], dtype=bool)
        if is_convex(PointSet(n, mask)):
            out.append(mask)
    arr = np.array(out)
    arr.flags.writeable = False
    return arr


def nearest_convex(S: PointSet) -> tuple[PointSet, Fraction]:
    """Closest convex set by exhaustive search (n <= 2); first minimiser wins."""
    masks = _convex_masks(S.n)
    diffs = (masks ^ S.mask).sum(axis=1)
    j = int(np.argmin(diffs))
    return PointSet(S.n, masks[j].copy()), Fraction(int(diffs[j]), 3 ** S.n)


def distance_to_convex_exact(S: PointSet) -> Fraction:
    return nearest_convex(S)[1]


def violating_triples(S: PointSet) -> np.ndarray:
    """Greedy disjoint (x, y, z) with y=(x+z)/2, x, z in S, y not in S.

    Midpoints are scanned in index order and, for each, directions d on the
    zero set of y in increasing index order (first nonzero entry +1).
    Rows are (x, y, z) = (y + d, y, y - d).
    """
    return pack_triples(S.mask, S.n)


def distance_lower_bound_triples(S: PointSet) -> Fraction:
    L = violating_triples(S)
    return Fraction(len(L), 3 * 3 ** S.n)


def distance_upper_bound_closure(S: PointSet, ell) -> Fraction:
    T = hull_closure(S.restrict(middle_mask(S.n, ell)))
    return Fraction(S.symmetric_difference_size(T), 3 ** S.n)
