"""Influence and Fourier analysis over {0,+-1}^n with the uniform measure.

Basis (values listed at x = -1, 0, +1):
    phi_0  = (1, 1, 1)
    phi_-1 = (-sqrt6/2, 0, sqrt6/2)
    phi_+1 = (-sqrt2/2, sqrt2, -sqrt2/2)
Characters are indexed like points: alpha_i in {0,+-1} with the same digits.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .ternary import PointSet, cube_trits, cube_weights, decode, encode

TRANSFORM_MAX_N = 14

_R2, _R6 = math.sqrt(2.0), math.sqrt(6.0)

# PHI[a_digit, x_digit] = phi_a(x); digit order is (0, +1, -1)
PHI = np.array([
    [1.0, 1.0, 1.0],
    [_R2, -_R2 / 2, -_R2 / 2],
    [0.0, _R6 / 2, -_R6 / 2],
])


def phi(a: int, x: int) -> float:
    return float(PHI[a % 3, x % 3])


def basis_eval(alpha: Sequence[int], x: Sequence[int]) -> float:
    if len(alpha) != len(x):
        raise ValueError("dimension mismatch")
    out = 1.0
    for a, t in zip(alpha, x):
        out *= phi(a, t)
    return out


# ---------------------------------------------------------------- sign functions

def sign_function(S: PointSet) -> np.ndarray:
    """+1 on S, -1 off S."""
    return np.where(S.mask, 1, -1).astype(np.int8)


def set_from_sign(f: np.ndarray, n: int) -> PointSet:
    f = np.asarray(f)
    if not np.isin(f, (-1, 1)).all():
        raise ValueError("sign function must take values in {-1, +1}")
    return PointSet(n, f > 0)


# ---------------------------------------------------------------- transforms

def _n_of(size: int) -> int:
    n = round(math.log(size, 3)) if size > 1 else 0
    if 3 ** n != size:
        raise ValueError("length is not a power of three")
    return n


def _apply_per_axis(values: np.ndarray, M: np.ndarray) -> np.ndarray:
    n = _n_of(values.size)
    if n > TRANSFORM_MAX_N:
        raise ValueError(f"transform is capped at n={TRANSFORM_MAX_N}")
    arr = np.asarray(values, dtype=float).reshape((3,) * n) if n else np.asarray(values, float)
    for ax in range(n):
        arr = np.moveaxis(np.tensordot(M, arr, axes=([1], [ax])), 0, ax)
    return arr.reshape(-1)


@dataclass
class FourierTable:
    n: int
    coefficients: np.ndarray

    def degrees(self) -> np.ndarray:
        return cube_weights(self.n)

    def __getitem__(self, alpha) -> float:
        i = alpha if isinstance(alpha, (int, np.integer)) else encode(alpha)
        return float(self.coefficients[i])

    def total_mass(self) -> float:
        return float(np.dot(self.coefficients, self.coefficients))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["alpha_index", "alpha_trits", "degree", "coefficient"])
            deg = self.degrees()
            for i, c in enumerate(self.coefficients):
                trits = "".join("0+-"[d % 3] for d in decode(i, self.n))
                w.writerow([i, trits, int(deg[i]), repr(float(c))])


def fourier_transform(f: np.ndarray) -> FourierTable:
    """f_hat(alpha) = E_x[f(x) phi_alpha(x)], one basis change per coordinate."""
    f = np.asarray(f, dtype=float)
    return FourierTable(_n_of(f.size), _apply_per_axis(f, PHI / 3.0))


def fourier_transform_naive(f: np.ndarray) -> FourierTable:
    """Direct 9^n sum, for cross-checking at small n."""
    f = np.asarray(f, dtype=float)
    n = _n_of(f.size)
    trits = cube_trits(n)
    digits = np.mod(trits, 3)
    coeffs = np.empty(f.size)
    for a in range(f.size):
        vals = np.prod(PHI[digits[a][None, :], digits], axis=1) if n else np.ones(1)
        coeffs[a] = np.dot(f, vals) / f.size
    return FourierTable(n, coeffs)


def inverse_transform(table: FourierTable) -> np.ndarray:
    return _apply_per_axis(table.coefficients, PHI.T)


def spectral_mass_above(table: FourierTable, d: int) -> float:
    c = table.coefficients
    return float(np.sum(c[table.degrees() > d] ** 2))


# ---------------------------------------------------------------- influence

def _axis_view(mask: np.ndarray, n: int, i: int) -> np.ndarray:
    """Array of shape (3^(n-1-i), 3, 3^i): middle axis is coordinate i."""
    return mask.reshape(3 ** (n - 1 - i), 3, 3 ** i)


def boundary_edge_count(S: PointSet) -> int:
    n = S.n
    total = 0
    for i in range(n):
        v = _axis_view(S.mask, n, i)
        total += int(np.count_nonzero(v[:, 0, :] != v[:, 1, :]))
        total += int(np.count_nonzero(v[:, 0, :] != v[:, 2, :]))
    return total


def influence(S: PointSet) -> Fraction:
    """Boundary edges (each adjacent pair once) over 3^n."""
    return Fraction(boundary_edge_count(S), 3 ** S.n)


def influence_naive(S: PointSet) -> Fraction:
    """Per-point recount: walk every point and its outward neighbours."""
    n = S.n
    member = S.mask.tolist()
    count = 0
    for u in range(3 ** n):
        rest, p = u, 1
        for _ in range(n):
            if rest % 3 == 0:
                if member[u] != member[u + p]:
                    count += 1
                if member[u] != member[u + 2 * p]:
                    count += 1
            rest //= 3
            p *= 3
    return Fraction(count, 3 ** n)


def nonconstant_lines(f: np.ndarray) -> int:
    f = np.asarray(f)
    n = _n_of(f.size)
    total = 0
    for i in range(n):
        v = _axis_view(f, n, i)
        total += int(np.count_nonzero((v[:, 0, :] != v[:, 1, :]) | (v[:, 0, :] != v[:, 2, :])))
    return total


def fourier_influence_spectral(f: np.ndarray) -> float:
    t = fourier_transform(f)
    return float(np.dot(t.degrees(), t.coefficients ** 2))


def fourier_influence_lines(f: np.ndarray) -> Fraction:
    """(8/3) * (non-constant axis lines) * 3^-n, valid for +-1 valued f."""
    n = _n_of(np.asarray(f).size)
    return Fraction(8, 3) * Fraction(nonconstant_lines(f), 3 ** n)


def fourier_influence(f: np.ndarray, tol: float = 1e-8) -> float:
    spec = fourier_influence_spectral(f)
    comb = fourier_influence_lines(f)
    if abs(spec - float(comb)) > tol:
        raise AssertionError(f"spectral {spec} and line count {float(comb)} disagree")
    return spec
