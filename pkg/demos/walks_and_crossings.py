"""Sparre Andersen frequencies and the square-root growth of max-walk crossings."""
import math

import numpy as np

from ternary_convexity import walks as wk

rng = np.random.default_rng(7)
for m in (2, 4, 8):
    x = wk.dss_perturb(m, rng)
    freq = wk.all_positive_probability(x, 50_000, rng)
    print(f"m={m}: all-positive frequency {freq:.4f} vs g(m) = {float(wk.sparre_andersen_g(m)):.4f}")

print("\nmean crossings of a max of 8 walks")
for m in (16, 64, 256):
    X = np.array([wk.dss_perturb(m, rng).x for _ in range(8)])
    sig, eps = wk.random_sigma_eps(rng, m, 2000)
    C = wk.crossing_counts(wk.walk_batch(X, rng.uniform(-1, 1, 8), sig, eps))
    print(f"m={m:4d}: E[C] = {C.mean():6.2f}, E[C]/sqrt(m) = {C.mean() / math.sqrt(m):.3f}")
