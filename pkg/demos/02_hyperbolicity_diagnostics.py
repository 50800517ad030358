"""How tree-like is a space?  Slim triangles, angle defects, and witnesses.

Triangles in a tree are degenerate tripods (slimness 0), hyperbolic
triangles are uniformly slim no matter how large, and flat triangles get
fatter linearly with scale.  The same contrast shows up in the
equidistant-pair criterion: points marching in step along two tree
geodesics stay together until they are forced to branch, while in the
plane they drift apart linearly.
"""

import numpy as np

import lionman as lm

tree = lm.tripod()
plane = lm.EuclideanSpace(2)
disk = lm.HyperbolicPlane()

rep = lm.slim_defect(tree, lm.vertex_point("a"), lm.vertex_point("b"),
                     lm.vertex_point("d"), grid=16)
print("tripod triangle slimness:", rep.value, "(exact zero: a tree)")

rep = lm.slim_defect(plane, lm.epoint(0, 0), lm.epoint(2, 0), lm.epoint(1, 1), grid=64)
print("flat triangle slimness:", float(rep.value))

print("\nslimness of random triangles vs sampling scale")
for scale in (1.0, 4.0, 8.0, 12.0):
    d_flat = lm.estimate_delta(plane, lm.PointSampler(plane, scale, seed=2), 12, grid=20)
    d_disk = lm.estimate_delta(disk, lm.PointSampler(disk, scale, seed=2), 12, grid=20)
    print(f"  scale {scale:5.1f}:  flat {float(d_flat):7.3f}   disk {float(d_disk):6.3f}")
print("the flat estimate keeps growing; the disk estimate levels off below ~1")

# equidistant pairs below the Gromov product
rng = np.random.default_rng(6)
triples = [tuple(tree.random_point(rng) for _ in range(3)) for _ in range(10)]
crit = lm.check_gromov_criterion(tree, triples, 0)
print("\ntree equidistant-pair criterion at threshold 0:",
      "pass" if crit.passed else "fail", "(supremum", crit.sup, ")")

far = (lm.epoint(0, 0), lm.epoint(100, 1), lm.epoint(100, -1))
crit = lm.check_gromov_criterion(plane, [far], 1.0)
_, r, dist = crit.witness
print("flat far-triple at threshold 1:", "pass" if crit.passed else "fail",
      f"(witness pair at level r={float(r):.2f} with separation {float(dist):.3f})")

# comparison with flat triangles of the same side lengths
v = lm.cat_defect(tree, lm.vertex_point("a"), lm.vertex_point("b"),
                  lm.vertex_point("d"), grid=12)
print("\ntree flat-comparison defect (strictly thinner than flat):", v)
v = lm.cat_defect(disk, lm.hpoint(0, 0), lm.hpoint(0.7, 0), lm.hpoint(0, 0.7), grid=12)
print("disk flat-comparison defect:", v)

# slimness of quasi-geodesic triangles grows with the allowed distortion
print("\nquasi-geodesic triangle slimness in the disk")
for lam in (1.0, 1.2, 1.4142):
    m = lm.estimate_quasi_slim_M(disk, lam, lm.PointSampler(disk, 4.0, seed=11), 6, grid=16)
    print(f"  lambda {lam:6.4f}: M = {float(m):.3f}")
