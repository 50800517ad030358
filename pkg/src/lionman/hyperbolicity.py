"""Triangle diagnostics: Gromov products, slimness, angles, flat comparison.

Everything here quantifies how far a space is from a tree.  Slimness of
sampled triangles estimates the hyperbolicity constant, the planted flat
comparison triangle measures the nonpositive-curvature defect, and the
equidistant-pair criterion gives an alternative hyperbolicity certificate
with explicit witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .curves import zigzag_quasi_geodesic
from .errors import DegenerateInputError, InvalidInputError
from .spaces import (
    EuclideanSpace,
    HyperbolicPlane,
    Point,
    PointSampler,
    RTreeSpace,
    Segment,
    Space,
)


def gromov_product(space: Space, x: Point, y: Point, z: Point):
    """(y|z)_x = (d(x,y) + d(x,z) - d(y,z)) / 2.

    Measures how long geodesics from x toward y and z travel together;
    always in [0, min(d(x,y), d(x,z))].  Exact on trees with rational data.
    """
    value = (space.distance(x, y) + space.distance(x, z) - space.distance(y, z)) / 2
    if isinstance(value, float) and -1e-12 < value < 0.0:
        return 0.0
    return value


def comparison_angle(space: Space, apex: Point, y: Point, z: Point) -> float:
    """Angle at the apex of the flat triangle with the same side lengths."""
    a = float(space.distance(apex, y))
    b = float(space.distance(apex, z))
    if a == 0.0 or b == 0.0:
        raise DegenerateInputError("comparison angle needs both sides nondegenerate")
    c = float(space.distance(y, z))
    cosv = (a * a + b * b - c * c) / (2.0 * a * b)
    return math.acos(min(1.0, max(-1.0, cosv)))


@dataclass(frozen=True)
class ComparisonTriangle:
    """Flat triangle with prescribed side lengths, planted in the plane.

    Vertices: v0 at the origin, v1 on the positive x-axis, v2 in the upper
    half plane.  ``side(i, j, s)`` returns the planar point at distance s
    from vertex i along the side toward vertex j.
    """

    d01: float
    d02: float
    d12: float
    coords: tuple

    @classmethod
    def from_points(cls, space: Space, x: Point, y: Point, z: Point):
        return cls.from_sides(float(space.distance(x, y)),
                              float(space.distance(x, z)),
                              float(space.distance(y, z)))

    @classmethod
    def from_sides(cls, d01: float, d02: float, d12: float):
        if d01 < 0 or d02 < 0 or d12 < 0:
            raise InvalidInputError("side lengths must be nonnegative")
        if d12 > d01 + d02 + 1e-9 or abs(d01 - d02) > d12 + 1e-9:
            raise InvalidInputError("side lengths violate the triangle inequality")
        v0 = (0.0, 0.0)
        v1 = (d01, 0.0)
        if d01 == 0.0 or d02 == 0.0:
            v2 = (d02, 0.0)
        else:
            cosv = (d01 * d01 + d02 * d02 - d12 * d12) / (2.0 * d01 * d02)
            ang = math.acos(min(1.0, max(-1.0, cosv)))
            v2 = (d02 * math.cos(ang), d02 * math.sin(ang))
        return cls(d01, d02, d12, (v0, v1, v2))

    def side(self, i: int, j: int, s: float):
        a = np.asarray(self.coords[i])
        b = np.asarray(self.coords[j])
        gap = float(np.linalg.norm(b - a))
        if gap == 0.0:
            return a
        return a + (s / gap) * (b - a)

    def planted_residual(self) -> float:
        """Largest gap between prescribed and planted side lengths."""
        c = [np.asarray(v) for v in self.coords]
        out = 0.0
        for (i, j, d) in ((0, 1, self.d01), (0, 2, self.d02), (1, 2, self.d12)):
            out = max(out, abs(float(np.linalg.norm(c[j] - c[i])) - d))
        return out


def alexandrov_angle(space: Space, apex: Point, y: Point, z: Point) -> float:
    """Upper angle between the geodesics from the apex toward y and z.

    Comparison angles shrink monotonically with scale in nonpositive
    curvature, so the limit exists; each family admits a closed form:
    vector angles in the flat families, chart tangent angles in the disk,
    and 0 or pi in a tree depending on whether the two segments share an
    initial subsegment.
    """
    if space.distance(apex, y) == 0 or space.distance(apex, z) == 0:
        raise DegenerateInputError("angle undefined when the apex equals an endpoint")
    if isinstance(space, HyperbolicPlane):
        wy = space.tangent_direction(apex, y)
        wz = space.tangent_direction(apex, z)
        cosv = wy.real * wz.real + wy.imag * wz.imag
        return math.acos(min(1.0, max(-1.0, cosv)))
    if isinstance(space, RTreeSpace):
        return 0.0 if gromov_product(space, apex, y, z) > 0 else math.pi
    if isinstance(space, EuclideanSpace):  # includes the box space
        u = np.asarray(y.coords) - np.asarray(apex.coords)
        v = np.asarray(z.coords) - np.asarray(apex.coords)
        cosv = float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))
        return math.acos(min(1.0, max(-1.0, cosv)))
    return alexandrov_angle_by_halving(space, apex, y, z)


def alexandrov_angle_by_halving(space: Space, apex: Point, y: Point, z: Point,
                                tol=1e-6, max_halvings=40) -> float:
    """Generic fallback: comparison angles at scales h, h/2, h/4, ...

    Stops once successive values differ by less than ``tol``; usable in any
    family as a cross-check of the closed forms.
    """
    ty, tz = 0.5, 0.5
    prev = None
    for _ in range(max_halvings):
        py = space.geodesic_point(apex, y, ty)
        pz = space.geodesic_point(apex, z, tz)
        ang = comparison_angle(space, apex, py, pz)
        if prev is not None and abs(ang - prev) < tol:
            return ang
        prev = ang
        ty /= 2.0
        tz /= 2.0
    return prev


# ---------------------------------------------------------------------------
# slimness


@dataclass
class SlimnessReport:
    """Largest sampled distance from one side to the union of the others."""

    value: object
    witness_side: int
    witness_param: float
    witness_point: Point
    grid: int


def _chain_segments(chain):
    return list(zip(chain, chain[1:]))


def _dist_to_chain(space: Space, p: Point, chain) -> float:
    best = None
    for a, b in _chain_segments(chain):
        _, d = space.project_to_segment(p, Segment(a, b))
        if best is None or d < best:
            best = d
    return best


def _chain_slimness(space: Space, chains, sample_sets, grid: int) -> SlimnessReport:
    worst = None
    for i, samples in enumerate(sample_sets):
        others = [c for j, c in enumerate(chains) if j != i]
        for t, p in samples:
            d = min(_dist_to_chain(space, p, others[0]),
                    _dist_to_chain(space, p, others[1]))
            if worst is None or d > worst[0]:
                worst = (d, i, t, p)
    value, side, t, p = worst
    return SlimnessReport(value=value, witness_side=side, witness_param=float(t),
                          witness_point=p, grid=grid)


def slim_defect(space: Space, x: Point, y: Point, z: Point, grid: int) -> SlimnessReport:
    """Empirical slimness of the geodesic triangle xyz.

    Each side is sampled on a uniform parameter grid and measured against
    the union of the other two sides; the result underestimates the true
    slimness by at most the sampling resolution.
    """
    if grid < 2:
        raise InvalidInputError("grid must be >= 2")
    verts = [(x, y), (y, z), (z, x)]
    chains = [[a, b] for a, b in verts]
    ts = [Fraction(j, grid - 1) for j in range(grid)]  # rational: exact on trees
    sample_sets = []
    for a, b in verts:
        sample_sets.append([(t, space.geodesic_point(a, b, t)) for t in ts])
    return _chain_slimness(space, chains, sample_sets, grid)


def estimate_delta(space: Space, sampler: PointSampler, trials: int, grid=24):
    """Largest slimness over seeded random geodesic triangles."""
    if trials < 1:
        raise InvalidInputError("trials must be >= 1")
    best = 0
    for _ in range(trials):
        x, y, z = sampler.draw(), sampler.draw(), sampler.draw()
        value = slim_defect(space, x, y, z, grid).value
        if value > best:
            best = value
    return best


def estimate_quasi_slim_M(space: Space, lam: float, sampler: PointSampler,
                          trials: int, grid=24, segments=6):
    """Largest slimness over seeded random lambda-quasi-geodesic triangles.

    Sides are seeded zigzags certified to satisfy the (lambda, 0) bounds
    before use; with lambda = 1 the triangles are geodesic and the result
    matches estimate_delta on the same seed.
    """
    if lam < 1:
        raise InvalidInputError("lambda must be >= 1")
    if trials < 1:
        raise InvalidInputError("trials must be >= 1")
    best = 0
    for trial in range(trials):
        x, y, z = sampler.draw(), sampler.draw(), sampler.draw()
        if lam == 1:
            value = slim_defect(space, x, y, z, grid).value
        else:
            rng = np.random.default_rng((sampler.seed, 1000 + trial))
            sides = []
            degenerate = False
            for a, b, opposite in ((x, y, z), (y, z, x), (z, x, y)):
                if space.distance(a, b) == 0:
                    degenerate = True
                    break
                sides.append(zigzag_quasi_geodesic(space, a, b, lam, segments, rng,
                                                   away_from=opposite))
            if degenerate:
                continue
            chains = [list(c.points) for c in sides]
            sample_sets = []
            for c in sides:
                ts = np.linspace(float(c.t_min), float(c.t_max), grid)
                sample_sets.append([(t, c.at(float(t))) for t in ts])
            value = _chain_slimness(space, chains, sample_sets, grid).value
        if value > best:
            best = value
    return best


# ---------------------------------------------------------------------------
# equidistant-pair hyperbolicity criterion


@dataclass
class GromovCriterionReport:
    """Supremum of d(y', z') over tested equidistant pairs on [x,y], [x,z]."""

    delta_prime: float
    sup: object
    witness: tuple | None
    per_triple: list
    levels: int
    passed: bool


def check_gromov_criterion(space: Space, triples, delta_prime, levels=16,
                           tol=None) -> GromovCriterionReport:
    """Test d(y', z') <= delta_prime for equidistant pairs below the product.

    For each triple (x, y, z) and each level r <= (y|z)_x, takes the points
    at distance r from x on [x, y] and [x, z] and records their distance.
    On a tree the pairs coincide and the supremum is exactly zero.
    """
    if delta_prime < 0:
        raise InvalidInputError("delta_prime must be >= 0")
    tol = space.rel_tol if tol is None else tol
    sup = 0
    witness = None
    per_triple = []
    for idx, (x, y, z) in enumerate(triples):
        g = gromov_product(space, x, y, z)
        dxy = space.distance(x, y)
        dxz = space.distance(x, z)
        local = 0
        local_witness = None
        if g > 0 and dxy > 0 and dxz > 0:
            for j in range(1, levels + 1):
                r = g * j / levels if isinstance(g, float) else g * Fraction(j, levels)
                yp = space.geodesic_point(x, y, r / dxy)
                zp = space.geodesic_point(x, z, r / dxz)
                d = space.distance(yp, zp)
                if d > local:
                    local = d
                    local_witness = (idx, r, d)
        per_triple.append((idx, local))
        if local > sup:
            sup = local
            witness = local_witness
    passed = sup <= delta_prime + tol * max(1.0, float(sup))
    return GromovCriterionReport(delta_prime=delta_prime, sup=sup, witness=witness,
                                 per_triple=per_triple, levels=levels, passed=passed)


# ---------------------------------------------------------------------------
# flat-comparison defect


def cat_defect(space: Space, x: Point, y: Point, z: Point, grid: int):
    """Largest d(p, q) - |comparison(p) - comparison(q)| over cross-side pairs.

    Nonpositive (up to tolerance) exactly when the triangle is at least as
    thin as its flat comparison triangle; strictly negative on trees.
    Samples are interior to the sides so shared vertices do not mask
    strictness.
    """
    if grid < 2:
        raise InvalidInputError("grid must be >= 2")
    tri = ComparisonTriangle.from_points(space, x, y, z)
    verts = [x, y, z]
    side_pairs = [(0, 1), (0, 2), (1, 2)]
    ts = [(j + 1) / (grid + 1) for j in range(grid)]

    pts = {}
    flat = {}
    for (i, j) in side_pairs:
        a, b = verts[i], verts[j]
        dij = float(space.distance(a, b))
        pts[(i, j)] = [space.geodesic_point(a, b, t) for t in ts]
        flat[(i, j)] = [tri.side(i, j, t * dij) for t in ts]

    worst = -math.inf
    for s1 in range(3):
        for s2 in range(s1 + 1, 3):
            ps = pts[side_pairs[s1]]
            qs = pts[side_pairs[s2]]
            fp = flat[side_pairs[s1]]
            fq = flat[side_pairs[s2]]
            dmat = space.pairwise_distances(list(ps) + list(qs))[:len(ps), len(ps):]
            fmat = np.linalg.norm(
                np.asarray(fp)[:, None, :] - np.asarray(fq)[None, :, :], axis=-1)
            worst = max(worst, float((dmat - fmat).max()))
    return worst
