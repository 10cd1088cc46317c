"""Learn a ball from random examples with the low-degree algorithm."""
import numpy as np

from ternary_convexity.instances import make_ball
from ternary_convexity.testers import ExampleStream, hypothesis_error_exact, low_degree_learn

n = 6
target = make_ball(4, n)
for tau_deg in (1, 2, 3):
    stream = ExampleStream(target, np.random.default_rng(tau_deg))
    h = low_degree_learn(stream, n, 0.25, tau_deg)
    err = hypothesis_error_exact(h, target)
    print(f"degree <= {tau_deg}: {h.samples:>7d} samples, error {float(err):.4f}")
