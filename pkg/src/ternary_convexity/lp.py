"""Exact decision of "is the origin in the convex hull of these integer points".

The workhorse is a fraction-free (integer preserving) Phase I simplex with
Bland's rule.  Large instances first go through an exact sign-pruning pass
and a floating point LP whose answer is then certified in exact arithmetic;
whenever certification fails we fall back to the exact simplex, so the
returned decision is always exact.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

EXACT_DIRECT_MAX_COLS = 24


def phase_one(A: list[list[int]], b: list[int]) -> list[Fraction] | None:
    """Find lam >= 0 with A lam = b, or None if infeasible.

    A has m rows of k integer entries. Returns a basic feasible solution.
    """
    m = len(A)
    k = len(A[0]) if m else 0
    width = k + m + 1
    T: list[list[int]] = []
    for i in range(m):
        sgn = -1 if b[i] < 0 else 1
        row = [sgn * a for a in A[i]] + [0] * m + [sgn * b[i]]
        row[k + i] = 1
        T.append(row)
    # phase one objective: minimise the sum of artificials
    obj = [0] * width
    for row in T:
        for j in range(k):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    for j in range(k, k + m):
        obj[j] = 0
    T.append(obj)
    basis = list(range(k, k + m))
    D = 1  # common denominator of the tableau

    while True:
        # Bland: smallest entering column with negative reduced cost
        enter = -1
        for j in range(k):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_num = best_den = 0
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                num = T[i][-1]
                if leave < 0:
                    better = True
                else:
                    lhs, rhs = num * best_den, best_num * a
                    better = lhs < rhs or (lhs == rhs and basis[i] < basis[leave])
                if better:
                    leave, best_num, best_den = i, num, a
        if leave < 0:  # cannot happen in phase one (objective bounded below)
            raise RuntimeError("unbounded phase one")
        p = T[leave][enter]
        prow = T[leave]
        for i in range(m + 1):
            if i == leave:
                continue
            row = T[i]
            f = row[enter]
            if f == 0:
                T[i] = [(p * v) // D for v in row]
            else:
                T[i] = [(p * v - f * w) // D for v, w in zip(row, prow)]
        obj = T[m]
        D = p
        basis[leave] = enter

    if obj[-1] != 0:
        return None
    lam = [Fraction(0)] * k
    for i, j in enumerate(basis):
        if j < k:
            lam[j] = Fraction(T[i][-1], D)
    return lam


def _sign_prune(P: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """Drop points that cannot carry weight in any representation of 0.

    If all kept points are >= 0 in coordinate j, every point with a positive
    j-th entry must get weight 0; same for <= 0.  Iterate to a fixed point.
    """
    keep = keep.copy()
    while keep.any():
        sub = P[keep]
        nonneg = (sub >= 0).all(axis=0)
        nonpos = (sub <= 0).all(axis=0)
        kill = np.zeros(P.shape[0], dtype=bool)
        if nonneg.any():
            kill |= (P[:, nonneg] > 0).any(axis=1)
        if nonpos.any():
            kill |= (P[:, nonpos] < 0).any(axis=1)
        kill &= keep
        if not kill.any():
            break
        keep &= ~kill
    return keep


def _exact_on(P: np.ndarray, cols: np.ndarray) -> dict[int, Fraction] | None:
    d = P.shape[1]
    sub = P[cols]
    A = [[int(v) for v in sub[:, r]] for r in range(d)]
    A.append([1] * len(cols))
    b = [0] * d + [1]
    lam = phase_one(A, b)
    if lam is None:
        return None
    return {int(cols[j]): lam[j] for j in range(len(cols)) if lam[j] != 0}


def _float_feasible(P: np.ndarray, cols: np.ndarray):
    from scipy.optimize import linprog

    sub = P[cols].astype(float)
    d = sub.shape[1]
    A_eq = np.vstack([sub.T, np.ones(len(cols))])
    b_eq = np.zeros(d + 1)
    b_eq[-1] = 1.0
    res = linprog(np.zeros(len(cols)), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if res.status == 0:
        return "feasible", res.x
    if res.status == 2:
        return "infeasible", None
    return "unknown", None


def _float_separator(P: np.ndarray, cols: np.ndarray) -> np.ndarray | None:
    """Integer c with <c, p> >= 1 for every point, verified exactly."""
    from scipy.optimize import linprog

    sub = P[cols].astype(float)
    d = sub.shape[1]
    res = linprog(np.zeros(d), A_ub=-sub, b_ub=-np.ones(len(cols)),
                  bounds=(-1e6, 1e6), method="highs")
    if res.status != 0:
        return None
    Pi = P[cols].astype(np.int64)
    for scale in (1.0, 8.0, 1024.0, 2.0 ** 20):
        c = np.round(res.x * scale).astype(np.int64)
        if (Pi @ c >= 1).all():
            return c
    return None


def origin_in_hull(P: np.ndarray) -> dict[int, Fraction] | None:
    """Exact test of 0 in conv(rows of P).

    Returns {row index: weight} (positive weights summing to one, at most
    d+1 of them) or None when the origin is outside the hull.
    """
    P = np.asarray(P, dtype=np.int64)
    if P.ndim != 2 or P.shape[0] == 0:
        raise ValueError("need a nonempty 2-d array of points")
    zero_rows = np.flatnonzero(~P.any(axis=1))
    if zero_rows.size:
        return {int(zero_rows[0]): Fraction(1)}
    keep = _sign_prune(P, np.ones(P.shape[0], dtype=bool))
    if not keep.any():
        return None
    # duplicates add nothing
    cols_all = np.flatnonzero(keep)
    _, first = np.unique(P[cols_all], axis=0, return_index=True)
    cols = np.sort(cols_all[first])
    if len(cols) <= EXACT_DIRECT_MAX_COLS:
        return _exact_on(P, cols)

    status, x = _float_feasible(P, cols)
    if status == "feasible":
        support = cols[x > 1e-9]
        cert = _exact_on(P, support)
        if cert is not None:
            return cert
    elif status == "infeasible":
        if _float_separator(P, cols) is not None:
            return None
    return _exact_on(P, cols)
