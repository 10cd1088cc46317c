"""Run the one-sided tester against convex sets and a truncated anti-slab."""
import numpy as np

from ternary_convexity.hull import distance_lower_bound_triples, verify_violating_pair
from ternary_convexity.instances import TasSpec, make_ball, make_tas
from ternary_convexity.testers import MembershipOracle, nonadaptive_onesided_test

n, eps = 12, 0.03
rng = np.random.default_rng(1)

ball = make_ball(2 * n / 3, n)
v = nonadaptive_onesided_test(MembershipOracle(ball), n, eps, rng)
print(f"ball: {v.decision} after {v.queries_used} queries")

tas = make_tas(TasSpec.standard(n, rng), n)
print("anti-slab triple-certified distance >=", float(distance_lower_bound_triples(tas)))
decisions = []
for seed in range(10):
    v = nonadaptive_onesided_test(MembershipOracle(tas), n, eps, np.random.default_rng(seed))
    decisions.append(v.decision)
    if v.witness is not None:
        assert verify_violating_pair(tas, v.witness)
print("anti-slab decisions:", decisions)
