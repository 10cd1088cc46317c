"""A short walk through discrete convexity on {0, +-1}^2 and {0, +-1}^3."""
from ternary_convexity.hull import (distance_lower_bound_triples, distance_to_convex_exact,
                                    distance_upper_bound_closure, find_minimal_violating_pair,
                                    hull_closure, in_hull, is_convex)
from ternary_convexity.instances import make_ball
from ternary_convexity.ternary import PointSet, decode

# Three points whose triangle swallows the origin.
S = PointSet.from_points([(-1, 1), (1, 0), (0, -1)])
ok, cert = in_hull((0, 0), S.points())
print("origin in the hull:", ok, "weights:", [str(w) for _, w in cert.support])
print("convex?", is_convex(S))
print("closure adds:", sorted(set(hull_closure(S).points()) - set(S.points())))

pair = find_minimal_violating_pair(S)
print("minimal violating pair:", [decode(x, 2) for x in pair.X], "->", decode(pair.y, 2))

# The three distance notions bracket each other.
print("distance: triples", distance_lower_bound_triples(S), "<= exact",
      distance_to_convex_exact(S), "<= closure", distance_upper_bound_closure(S, 2))

# Balls are convex in every dimension.
for r in range(5):
    print(f"ball r={r} in n=3: {len(make_ball(r, 3)):2d} points, convex={is_convex(make_ball(r, 3))}")
