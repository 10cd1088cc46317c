"""Binomial coefficients near the middle: exact values, the series
approximation, a truncated form and Stirling's bounds.

All real arithmetic runs in mpmath at 256 bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

PREC = 256


def exact_binomial(n: int, k: int) -> int:
    """C(n, k) by multiplicative accumulation over Python integers."""
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0, {n}]")
    k = min(k, n - k)
    out = 1
    for i in range(1, k + 1):
        out = out * (n - k + i) // i
    return out


def _series_term(x, k):
    return x ** (2 * k - 1) * (mpmath.mpf(1) / (2 * k - 1) - mpmath.mpf(1) / (2 * k))


def series_tail_bound(x, K: int):
    """Bound on sum_{k > K} x^(2k-1)(1/(2k-1) - 1/(2k)); each coefficient is < 1/(2k(2k-1))."""
    x = mpmath.mpf(x)
    first = x ** (2 * K + 1) / ((2 * K + 2) * (2 * K + 1))
    return first / (1 - x * x)


def approx_series(n: int, tau, K: int = 64):
    """2^n sqrt(2n / (pi (n - tau)(n + tau))) / exp(tau * series), series cut at K terms.

    Returns an mpf. Requires tau / n < 1; the 0.9 n regime is the intended one.
    """
    with mpmath.workprec(PREC):
        n_ = mpmath.mpf(n)
        t = mpmath.mpf(tau)
        x = t / n_
        if not 0 <= x < 1:
            raise ValueError("need 0 <= tau < n")
        series = mpmath.fsum(_series_term(x, k) for k in range(1, K + 1))
        front = mpmath.power(2, n) * mpmath.sqrt(2 * n_ / (mpmath.pi * (n_ - t) * (n_ + t)))
        return front / mpmath.exp(t * series)


def approx_truncated(n: int, tau, s: int):
    """2^n / sqrt(n) * exp(-sum_{k<s} tau^(2k) / n^(2k-1) (1/(2k-1) - 1/(2k)))."""
    with mpmath.workprec(PREC):
        n_ = mpmath.mpf(n)
        t = mpmath.mpf(tau)
        acc = mpmath.fsum(t ** (2 * k) / n_ ** (2 * k - 1) *
                          (mpmath.mpf(1) / (2 * k - 1) - mpmath.mpf(1) / (2 * k))
                          for k in range(1, s))
        return mpmath.power(2, n) / mpmath.sqrt(n_) * mpmath.exp(-acc)


@dataclass(frozen=True)
class ApproxReport:
    n: int
    tau: int
    exact_log2: float
    approx_log2: float
    log_ratio: float


def approx_report(n: int, tau: int, K: int = 64) -> ApproxReport:
    if (n - tau) % 2:
        raise ValueError("n and tau must have the same parity")
    exact = exact_binomial(n, (n - tau) // 2)
    with mpmath.workprec(PREC):
        ex = mpmath.mpf(exact)
        ap = approx_series(n, tau, K)
        lr = mpmath.log(ex / ap)
        return ApproxReport(n, tau, float(mpmath.log(ex, 2)), float(mpmath.log(ap, 2)), float(lr))


def parity_adjust(n: int, tau: int) -> int:
    return tau if (n - tau) % 2 == 0 else tau - 1


def sweep_taus(ns, exponent: float = 0.7) -> list[tuple[int, int]]:
    return [(n, parity_adjust(n, int(math.floor(n ** exponent)))) for n in ns]


def stirling_sandwich(n: int):
    """(lower, upper) with sqrt(2 pi n)(n/e)^n e^{1/(12n+1)} <= n! <= ... e^{1/(12n)}."""
    if n < 1:
        raise ValueError("n must be positive")
    with mpmath.workprec(PREC):
        n_ = mpmath.mpf(n)
        base = mpmath.sqrt(2 * mpmath.pi * n_) * (n_ / mpmath.e) ** n_
        return base * mpmath.exp(1 / (12 * n_ + 1)), base * mpmath.exp(1 / (12 * n_))


def stirling_holds(n: int) -> bool:
    lo, hi = stirling_sandwich(n)
    with mpmath.workprec(PREC):
        if n <= 30:
            f = mpmath.mpf(math.factorial(n))
            return bool(lo <= f <= hi)
        # log domain beyond
        lf = mpmath.loggamma(n + 1)
        return bool(mpmath.log(lo) <= lf <= mpmath.log(hi))


def e_series(N: int, plus: bool, tol: float = 1e-30):
    """exp(+-1 - sum_k c_k / (N^k (k+1))) with c_k = (-1)^(k+1) for plus, else 1.

    Terms are summed until the next one is below tol, which bounds the
    truncation error (geometric tail with ratio 1/N).
    """
    if N <= 1:
        raise ValueError("need N > 1")
    with mpmath.workprec(PREC):
        N_ = mpmath.mpf(N)
        acc = mpmath.mpf(0)
        k = 1
        while True:
            term = 1 / (N_ ** k * (k + 1))
            acc += (term if k % 2 else -term) if plus else term
            if term / (N_ - 1) < tol:
                break
            k += 1
        return mpmath.exp(1 - acc) if plus else mpmath.exp(-1 - acc)
