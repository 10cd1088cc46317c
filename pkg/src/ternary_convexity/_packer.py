"""Greedy packing of disjoint violating triples (compiled with numba)."""
from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True)
def _pack(mask, n):
    size = mask.shape[0]
    used = np.zeros(size, dtype=np.bool_)
    out = np.empty((size // 3 + 1, 3), dtype=np.int64)
    count = 0
    pos = np.empty(n, dtype=np.int64)
    digit = np.empty(n, dtype=np.int64)
    for y in range(size):
        if mask[y] or used[y]:
            continue
        # zero coordinates of y, ascending
        nz = 0
        rest = y
        p = 1
        for i in range(n):
            if rest % 3 == 0:
                pos[nz] = p
                nz += 1
            rest //= 3
            p *= 3
        if nz == 0:
            continue
        for j in range(nz):
            digit[j] = 0
        plus = 0   # index offset of d
        minus = 0  # index offset of -d
        total = 1
        for j in range(nz):
            total *= 3
        for c in range(1, total):
            # base-3 increment of the direction counter
            j = 0
            while True:
                if digit[j] == 0:
                    digit[j] = 1
                    plus += pos[j]
                    minus += 2 * pos[j]
                    break
                elif digit[j] == 1:
                    digit[j] = 2
                    plus += pos[j]
                    minus -= pos[j]
                    break
                else:
                    digit[j] = 0
                    plus -= 2 * pos[j]
                    minus -= pos[j]
                    j += 1
            # canonical: the lowest nonzero digit is +1
            k = 0
            while digit[k] == 0:
                k += 1
            if digit[k] != 1:
                continue
            x = y + plus
            z = y + minus
            if mask[x] and mask[z] and not used[x] and not used[z]:
                used[x] = True
                used[y] = True
                used[z] = True
                out[count, 0] = x
                out[count, 1] = y
                out[count, 2] = z
                count += 1
                break
    return out[:count].copy()


def pack_triples(mask: np.ndarray, n: int) -> np.ndarray:
    return _pack(np.ascontiguousarray(mask, dtype=np.bool_), n)
