"""A quasi-geodesic ray trapped in a geodesically bounded box.

The box 0 <= x_i <= 10^i is linearly bounded, so it contains no geodesic
ray; yet the corner-to-corner polyline through it is a global
sqrt(11/3)-quasi-geodesic.  Quasi-geodesic rays therefore do not force
geodesic rays in flat geometry; that implication needs Gromov
hyperbolicity.
"""

import math

import lionman as lm

curve = lm.l2_example_curve(n_dims=6, base=10.0)
print("breakpoints:", [float(t) for t in curve.params])
print("corner after leg 2:", curve.at(110.0).coords)

lam = math.sqrt(11.0 / 3.0)
report = lm.check_quasi_geodesic(curve, lam, 0.0, grid=500)
print(f"\nlambda = sqrt(11/3) = {lam:.6f}: {'PASS' if report.passed else 'FAIL'}")
print(f"  {report.n_pairs} pairs, worst ratio {report.min_ratio:.6f}"
      f" (needs >= {1 / lam:.6f}) at", report.min_ratio_pair)

report = lm.check_quasi_geodesic(curve, 1.0, 0.0, grid=500)
s, t, dist = report.first_lower_violation
print(f"\nlambda = 1: {'PASS' if report.passed else 'FAIL'}")
print(f"  first violated pair: s={float(s):g}, t={float(t):g};"
      f" the curve covers parameter gap {float(t - s):g}"
      f" with distance {dist:.6f} = sqrt(10100)")

print("\nnot a near-geodesic either: with slack b = 5 the lower bound fails")
report = lm.check_directional_curve(curve, 5.0, grid=400)
print("  directional check:", "PASS" if report.passed else "FAIL",
      "worst slack", round(report.worst_lower_slack, 3), "at", report.worst_lower_witness)

print("\nbut it is 1-Lipschitz: the upper bound holds up to float rounding")
print("  worst upper slack:", report.worst_upper_slack,
      "on parameter gaps of order 1e5")
