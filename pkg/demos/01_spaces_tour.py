"""Tour of the four geodesic space families and their shared interface.

Every space answers the same three questions: how far apart are two
points, what lies between them, and what is the nearest point of a
segment.  Trees answer exactly (rational arithmetic); the flat and
hyperbolic families answer in float64.
"""

import math
from fractions import Fraction

import lionman as lm

# Euclidean plane: the familiar baseline
plane = lm.EuclideanSpace(2)
a, b = lm.epoint(0, 0), lm.epoint(3, 4)
print("Euclidean distance (0,0)-(3,4):", plane.distance(a, b))
print("  quarter point:", plane.geodesic_point(a, b, 0.25))
foot, d = plane.project_to_segment(lm.epoint(1, 1), lm.Segment(a, lm.epoint(2, 0)))
print("  projection of (1,1) onto [(0,0),(2,0)]:", foot, "at distance", d)

# Poincare disk: negatively curved, so geodesics bend toward the center
disk = lm.HyperbolicPlane()
u, v = lm.hpoint(0, 0), lm.hpoint(0.5, 0)
print("\nDisk distance (0,0)-(0.5,0):", disk.distance(u, v), "= ln 3 =", math.log(3))
w = lm.hpoint(0.5, 0.5)
mid = disk.geodesic_point(w, lm.hpoint(-0.5, 0.5), 0.5)
print("  midpoint of a chord near the rim bends inward:", mid)

# Metric tree: a center with three unit legs; everything is exact
tree = lm.tripod()
print("\nTripod distance a-b:", tree.distance(lm.vertex_point("a"), lm.vertex_point("b")))
mid = tree.geodesic_point(lm.vertex_point("a"), lm.vertex_point("b"), Fraction(1, 2))
print("  midpoint of [a, b] is the center:", mid)
q, d = tree.project_to_segment(lm.vertex_point("d"),
                               lm.Segment(lm.vertex_point("a"), lm.vertex_point("b")))
print("  projecting leaf d onto [a, b] lands on the center at distance", d)

# Box in l2 with exponentially growing sides: flat, convex, and huge
box = lm.L2BoxSpace(n=6, base=10.0)
print("\nBox bounds:", box.bounds)
p = lm.boxpoint(5, 50, 500, 0, 0, 0)
print("  contains (5,50,500,0,0,0):", lm.domain_contains(box, lm.WholeSpace(), p))
print("  contains (11,0,...):",
      lm.domain_contains(box, lm.WholeSpace(), lm.boxpoint(11, 0, 0, 0, 0, 0)))
