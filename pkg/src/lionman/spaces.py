"""Concrete geodesic metric spaces behind one uniform interface.

Four families are implemented: Euclidean n-space, the Poincare-disk model
of the hyperbolic plane, metric trees (with an optional half-infinite ray
edge), and an axis-aligned box in l2 whose side lengths grow geometrically.
Each space exposes distance, geodesic interpolation, nearest-point
projection onto a geodesic segment, membership tests, and seeded point
sampling, so triangle diagnostics, curve checks, and the pursuit game can
stay space-agnostic.

All operations are pure functions of immutable values.  Tree arithmetic is
exact whenever edge lengths and offsets are `fractions.Fraction`; the other
families work in float64.  Hyperbolic computations degrade near the disk
rim; keep points within hyperbolic distance ~30 of the origin.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import (
    ConfigError,
    DegenerateInputError,
    InvalidInputError,
    InvalidPointError,
    SpaceMismatchError,
)


# ---------------------------------------------------------------------------
# points and segments


@dataclass(frozen=True)
class Point:
    """A location tagged with the space family it lives in.

    Coordinate spaces use ``coords``; tree points use either
    ``(edge, offset)`` with the offset measured from the edge's first
    endpoint, or ``vertex`` alone.  The ray edge has index ``RAY_EDGE``.
    """

    kind: str
    coords: tuple = ()
    edge: int | None = None
    offset: object = None
    vertex: object = None

    def __repr__(self):
        if self.kind == "rtree":
            if self.vertex is not None:
                return f"Point(rtree, vertex={self.vertex!r})"
            return f"Point(rtree, edge={self.edge}, offset={self.offset})"
        return f"Point({self.kind}, {tuple(round(c, 12) for c in self.coords)})"


RAY_EDGE = -1


def epoint(*coords) -> Point:
    """Euclidean point from coordinates."""
    return Point("euclidean", tuple(float(c) for c in coords))


def hpoint(x, y) -> Point:
    """Poincare-disk point; must satisfy x^2 + y^2 < 1."""
    return Point("hyperbolic", (float(x), float(y)))


def boxpoint(*coords) -> Point:
    """Point of the l2 box space."""
    return Point("l2box", tuple(float(c) for c in coords))


def edge_point(edge, offset) -> Point:
    """Tree point on ``edge`` at ``offset`` from the edge's first endpoint."""
    if isinstance(offset, int):
        offset = Fraction(offset)
    return Point("rtree", edge=int(edge), offset=offset)


def vertex_point(v) -> Point:
    """Tree point sitting on the vertex ``v``."""
    return Point("rtree", vertex=v)


@dataclass(frozen=True)
class Segment:
    """Geodesic segment between two points of one space."""

    a: Point
    b: Point


def point_to_json(p: Point) -> dict:
    if p.kind == "rtree":
        if p.vertex is not None:
            return {"kind": "rtree", "vertex": p.vertex}
        off = str(p.offset) if isinstance(p.offset, Fraction) else p.offset
        return {"kind": "rtree", "edge": p.edge, "offset": off}
    return {"kind": p.kind, "coords": list(p.coords)}


def point_from_json(data: dict) -> Point:
    kind = data["kind"]
    if kind == "rtree":
        if "vertex" in data:
            return vertex_point(data["vertex"])
        off = data["offset"]
        if isinstance(off, str):
            off = Fraction(off)
        return edge_point(data["edge"], off)
    return Point(kind, tuple(float(c) for c in data["coords"]))


# ---------------------------------------------------------------------------
# space interface


class Space:
    """Common surface of every space family."""

    kind = "abstract"
    rel_tol = 1e-9

    # -- membership ---------------------------------------------------------

    def contains_point(self, p: Point) -> bool:
        raise NotImplementedError

    def check_point(self, p: Point, name: str = "point") -> None:
        if not isinstance(p, Point) or p.kind != self.kind:
            got = getattr(p, "kind", type(p).__name__)
            raise SpaceMismatchError(f"{name}: expected a {self.kind} point, got {got}")
        if not self.contains_point(p):
            raise InvalidPointError(f"{name}: {p!r} is not a member of this space")

    # -- metric structure ---------------------------------------------------

    def distance(self, x: Point, y: Point):
        self.check_point(x, "x")
        self.check_point(y, "y")
        return self._dist(x, y)

    def geodesic_point(self, x: Point, y: Point, t) -> Point:
        """Point z on [x, y] with d(x, z) = t * d(x, y), for t in [0, 1]."""
        self.check_point(x, "x")
        self.check_point(y, "y")
        if t < 0 or t > 1:
            raise InvalidInputError(f"interpolation parameter {t} outside [0, 1]")
        if t == 0:
            return x
        if t == 1:
            return y
        return self._interpolate(x, y, t)

    def project_to_segment(self, p: Point, seg: Segment):
        """Nearest point of the segment, returned as (point, distance)."""
        self.check_point(p, "p")
        self.check_point(seg.a, "seg.a")
        self.check_point(seg.b, "seg.b")
        if self._dist(seg.a, seg.b) == 0:
            return seg.a, self._dist(p, seg.a)
        return self._project(p, seg)

    def _dist(self, x, y):
        raise NotImplementedError

    def _interpolate(self, x, y, t):
        raise NotImplementedError

    def _project(self, p, seg):
        raise NotImplementedError

    # -- bulk helpers -------------------------------------------------------

    def pairwise_distances(self, points) -> np.ndarray:
        n = len(points)
        out = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                d = float(self._dist(points[i], points[j]))
                out[i, j] = out[j, i] = d
        return out

    def random_point(self, rng: np.random.Generator, scale=1.0) -> Point:
        raise NotImplementedError


class EuclideanSpace(Space):
    """Flat n-space with the l2 metric."""

    kind = "euclidean"

    def __init__(self, dim=2):
        if dim < 1:
            raise InvalidInputError("dimension must be >= 1")
        self.dim = dim

    def __repr__(self):
        return f"EuclideanSpace(dim={self.dim})"

    def contains_point(self, p):
        return len(p.coords) == self.dim and all(math.isfinite(c) for c in p.coords)

    def _dist(self, x, y):
        return math.dist(x.coords, y.coords)

    def _interpolate(self, x, y, t):
        # a + t*(b - a) keeps each coordinate inside [min, max] in float64
        t = float(t)
        cs = tuple(a + t * (b - a) for a, b in zip(x.coords, y.coords))
        return Point(self.kind, cs)

    def _project(self, p, seg):
        a = np.asarray(seg.a.coords)
        b = np.asarray(seg.b.coords)
        v = b - a
        t = float(np.dot(np.asarray(p.coords) - a, v) / np.dot(v, v))
        t = min(1.0, max(0.0, t))
        q = self.geodesic_point(seg.a, seg.b, t)
        return q, self._dist(p, q)

    def pairwise_distances(self, points):
        arr = np.asarray([p.coords for p in points], dtype=float)
        diff = arr[:, None, :] - arr[None, :, :]
        return np.sqrt((diff * diff).sum(axis=-1))

    def random_point(self, rng, scale=1.0):
        return Point(self.kind, tuple(float(c) for c in rng.normal(0.0, scale, self.dim)))


class L2BoxSpace(EuclideanSpace):
    """Axis-aligned box {x : 0 <= x_i <= base**(i+1)} with the l2 metric.

    A convex subset of n-space, so geodesics are straight segments and the
    whole Euclidean machinery applies; membership additionally enforces the
    box bounds.
    """

    kind = "l2box"

    def __init__(self, n=6, base=10.0):
        if n < 1:
            raise InvalidInputError("n must be >= 1")
        if base <= 1:
            raise InvalidInputError("base must be > 1")
        super().__init__(dim=n)
        self.n = n
        self.base = float(base)
        self.bounds = tuple(float(base) ** (i + 1) for i in range(n))

    def __repr__(self):
        return f"L2BoxSpace(n={self.n}, base={self.base})"

    def contains_point(self, p):
        if len(p.coords) != self.n:
            return False
        return all(0.0 <= c <= b for c, b in zip(p.coords, self.bounds))

    def random_point(self, rng, scale=1.0):
        cs = rng.uniform(0.0, 1.0, self.n) * np.asarray(self.bounds) * min(1.0, scale)
        return Point(self.kind, tuple(float(c) for c in cs))


class HyperbolicPlane(Space):
    """Poincare disk: the open unit disk with curvature -1.

    Distances use the cancellation-safe arcsinh form; geodesic interpolation
    and tangent directions go through the Moebius translation that carries a
    base point to the origin, where geodesics are diameters.
    """

    kind = "hyperbolic"
    rel_tol = 1e-7
    dim = 2

    def __repr__(self):
        return "HyperbolicPlane()"

    @staticmethod
    def _c(p: Point) -> complex:
        return complex(p.coords[0], p.coords[1])

    @staticmethod
    def _pt(z: complex) -> Point:
        return Point("hyperbolic", (z.real, z.imag))

    def contains_point(self, p):
        if len(p.coords) != 2:
            return False
        x, y = p.coords
        return x * x + y * y < 1.0

    def _dist(self, x, y):
        u, v = self._c(x), self._c(y)
        du = 1.0 - abs(u) ** 2
        dv = 1.0 - abs(v) ** 2
        q = abs(u - v) ** 2 / (du * dv)
        return 2.0 * math.asinh(math.sqrt(q))

    def _to_origin(self, a: complex, z: complex) -> complex:
        # disk automorphism sending a to 0
        return (z - a) / (1.0 - a.conjugate() * z)

    def _from_origin(self, a: complex, w: complex) -> complex:
        return (w + a) / (1.0 + a.conjugate() * w)

    def _interpolate(self, x, y, t):
        a, b = self._c(x), self._c(y)
        w = self._to_origin(a, b)
        r = abs(w)
        if r == 0.0:
            return x
        s = float(t) * self._dist(x, y)
        z = math.tanh(0.5 * s) * (w / r)
        return self._pt(self._from_origin(a, z))

    def tangent_direction(self, x: Point, y: Point) -> complex:
        """Unit tangent at x of the geodesic toward y, in the chart at x."""
        w = self._to_origin(self._c(x), self._c(y))
        r = abs(w)
        if r == 0.0:
            raise DegenerateInputError("tangent direction undefined for coincident points")
        return w / r

    def point_toward(self, x: Point, direction: complex, s: float) -> Point:
        """Travel hyperbolic distance s from x along a unit chart direction."""
        z = math.tanh(0.5 * s) * direction
        return self._pt(self._from_origin(self._c(x), z))

    def _project(self, p, seg):
        f = lambda t: self._dist(p, self._interpolate(seg.a, seg.b, t))
        res = minimize_scalar(f, bounds=(0.0, 1.0), method="bounded",
                              options={"xatol": 1e-12})
        best_t, best_d = 0.0, self._dist(p, seg.a)
        for t, d in ((1.0, self._dist(p, seg.b)), (float(res.x), float(res.fun))):
            if d < best_d:
                best_t, best_d = t, d
        q = self.geodesic_point(seg.a, seg.b, best_t)
        return q, best_d

    def pairwise_distances(self, points):
        arr = np.asarray([p.coords for p in points], dtype=float)
        sq = (arr * arr).sum(axis=1)
        diff = arr[:, None, :] - arr[None, :, :]
        num = (diff * diff).sum(axis=-1)
        den = (1.0 - sq)[:, None] * (1.0 - sq)[None, :]
        return 2.0 * np.arcsinh(np.sqrt(num / den))

    def random_point(self, rng, scale=1.0):
        # uniform hyperbolic radius in [0, scale], uniform direction
        s = rng.uniform(0.0, scale)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        r = math.tanh(0.5 * s)
        return Point(self.kind, (r * math.cos(theta), r * math.sin(theta)))


class RTreeSpace(Space):
    """Metric tree: vertices joined by edges of positive length.

    Points live on edges as (edge index, offset from the first endpoint) or
    on vertices.  At most one half-infinite "ray" edge may hang off a
    designated anchor vertex; its points use edge index ``RAY_EDGE`` and any
    offset >= 0.  With `Fraction` edge lengths and offsets every operation
    is exact.
    """

    kind = "rtree"

    def __init__(self, vertices, edges, ray_at=None):
        self.vertices = list(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise InvalidInputError("duplicate vertex ids")
        self.edges = []
        for u, v, length in edges:
            if u not in vset or v not in vset:
                raise InvalidInputError(f"edge ({u!r}, {v!r}) references unknown vertex")
            length = Fraction(length) if isinstance(length, (int, str, Fraction)) else float(length)
            if length <= 0:
                raise InvalidInputError(f"edge ({u!r}, {v!r}) has non-positive length")
            self.edges.append((u, v, length))
        if ray_at is not None and ray_at not in vset:
            raise InvalidInputError(f"ray anchor {ray_at!r} is not a vertex")
        self.ray_at = ray_at

        self._adj = {v: [] for v in self.vertices}
        for i, (u, v, length) in enumerate(self.edges):
            self._adj[u].append((i, v, length))
            self._adj[v].append((i, u, length))
        self._check_is_tree()
        self._vdist = self._all_vertex_distances()
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self._vdist_f = np.array(
            [[float(self._vdist[u][v]) for v in self.vertices] for u in self.vertices]
        )
        self._path_cache = {}

    def __repr__(self):
        ray = f", ray_at={self.ray_at!r}" if self.ray_at is not None else ""
        return f"RTreeSpace({len(self.vertices)} vertices, {len(self.edges)} edges{ray})"

    def _check_is_tree(self):
        if len(self.edges) != len(self.vertices) - 1:
            raise InvalidInputError("edge count must be vertex count - 1 for a tree")
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for _, w, _ in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise InvalidInputError("edge graph is not connected")

    def _all_vertex_distances(self):
        table = {}
        for root in self.vertices:
            dist = {root: Fraction(0)}
            stack = [root]
            while stack:
                v = stack.pop()
                for _, w, length in self._adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + length
                        stack.append(w)
            table[root] = dist
        return table

    def _vertex_path(self, u, v):
        """Vertex sequence from u to v (inclusive)."""
        key = (u, v)
        if key in self._path_cache:
            return self._path_cache[key]
        parent = {u: None}
        stack = [u]
        while stack:
            w = stack.pop()
            if w == v:
                break
            for _, x, _ in self._adj[w]:
                if x not in parent:
                    parent[x] = w
                    stack.append(x)
        path = [v]
        while path[-1] != u:
            path.append(parent[path[-1]])
        path.reverse()
        self._path_cache[key] = path
        return path

    def edge_length(self, e):
        if e == RAY_EDGE:
            return math.inf
        return self.edges[e][2]

    # -- canonical form: ("V", vertex) or ("E", edge, offset) with offset
    #    strictly interior to the edge

    def _canon(self, p: Point):
        if p.vertex is not None:
            return ("V", p.vertex)
        e, off = p.edge, p.offset
        if e == RAY_EDGE:
            if off == 0:
                return ("V", self.ray_at)
            return ("E", RAY_EDGE, off)
        u, v, length = self.edges[e]
        if off == 0:
            return ("V", u)
        if off == length:
            return ("V", v)
        return ("E", e, off)

    def _exits(self, c):
        """Exit vertices of a canonical point with the cost to reach them."""
        if c[0] == "V":
            return [(c[1], Fraction(0))]
        _, e, off = c
        if e == RAY_EDGE:
            return [(self.ray_at, off)]
        u, v, length = self.edges[e]
        return [(u, off), (v, length - off)]

    def contains_point(self, p):
        if p.vertex is not None:
            return p.vertex in self._adj
        if p.edge is None or p.offset is None:
            return False
        if p.edge == RAY_EDGE:
            return self.ray_at is not None and p.offset >= 0
        if not 0 <= p.edge < len(self.edges):
            return False
        return 0 <= p.offset <= self.edges[p.edge][2]

    def _dist(self, x, y):
        cx, cy = self._canon(x), self._canon(y)
        if cx[0] == "E" and cy[0] == "E" and cx[1] == cy[1]:
            return abs(cx[2] - cy[2])
        best = None
        for ex, cost_x in self._exits(cx):
            for ey, cost_y in self._exits(cy):
                d = cost_x + self._vdist[ex][ey] + cost_y
                if best is None or d < best:
                    best = d
        return best

    def _interpolate(self, x, y, t):
        total = self._dist(x, y)
        if total == 0:
            return x
        s = t * total
        return self._walk(x, y, s, total)

    def _walk(self, x, y, s, total):
        """Point at distance s from x on [x, y]; assumes 0 <= s <= total."""
        cx, cy = self._canon(x), self._canon(y)
        if cx[0] == "E" and cy[0] == "E" and cx[1] == cy[1]:
            off = cx[2] + s if cy[2] >= cx[2] else cx[2] - s
            return Point(self.kind, edge=cx[1], offset=off)
        # choose the exit pair realizing the distance (unique in a tree)
        best = None
        for ex, cost_x in self._exits(cx):
            for ey, cost_y in self._exits(cy):
                d = cost_x + self._vdist[ex][ey] + cost_y
                if best is None or d < best[0]:
                    best = (d, ex, ey, cost_x, cost_y)
        _, ex, ey, cost_x, cost_y = best
        if s <= cost_x:
            return self._point_between(cx, ("V", ex), s, cost_x)
        s = s - cost_x
        path = self._vertex_path(ex, ey)
        for a, b in zip(path, path[1:]):
            step = self._vdist[a][b]
            if s <= step:
                return self._point_between(("V", a), ("V", b), s, step)
            s = s - step
        return self._point_between(("V", ey), cy, s, cost_y)

    def _point_between(self, ca, cb, s, gap):
        """Point at distance s from ca toward cb; both lie on one edge."""
        if s == 0 or gap == 0:
            return self._canon_to_point(ca)
        if s == gap:
            return self._canon_to_point(cb)
        if ca[0] == "V" and cb[0] == "V":
            e, forward = self._edge_of(ca[1], cb[1])
            off = s if forward else self.edges[e][2] - s
            return Point(self.kind, edge=e, offset=off)
        if ca[0] == "V":
            e = cb[1]
            off_b = cb[2]
            off_a = self._vertex_offset_on_edge(ca[1], e)
            off = off_a + s if off_b >= off_a else off_a - s
            return Point(self.kind, edge=e, offset=off)
        e = ca[1]
        off_a = ca[2]
        if cb[0] == "V":
            off_b = self._vertex_offset_on_edge(cb[1], e)
        else:
            off_b = cb[2]
        off = off_a + s if off_b >= off_a else off_a - s
        return Point(self.kind, edge=e, offset=off)

    def _edge_of(self, u, v):
        """Edge joining two adjacent vertices, and whether it runs u -> v."""
        for i, w, _ in self._adj[u]:
            if w == v:
                return i, self.edges[i][0] == u
        raise InvalidInputError(f"vertices {u!r}, {v!r} are not adjacent")

    def _vertex_offset_on_edge(self, v, e):
        if e == RAY_EDGE:
            if v != self.ray_at:
                raise InvalidInputError(f"vertex {v!r} is not on the ray edge")
            return Fraction(0)
        u, w, length = self.edges[e]
        if v == u:
            return Fraction(0)
        if v == w:
            return length
        raise InvalidInputError(f"vertex {v!r} is not on edge {e}")

    def _canon_to_point(self, c):
        if c[0] == "V":
            return Point(self.kind, vertex=c[1])
        return Point(self.kind, edge=c[1], offset=c[2])

    def _project(self, p, seg):
        # nearest point of [a, b] is the tree median m(a, b, p); its distance
        # from a along the segment equals the Gromov product (p|b)_a
        a, b = seg.a, seg.b
        dab = self._dist(a, b)
        r = (self._dist(a, p) + dab - self._dist(p, b)) / 2
        r = min(max(r, 0), dab)
        q = self._walk(a, b, r, dab)
        return q, self._dist(p, q)

    def pairwise_distances(self, points):
        n = len(points)
        canons = [self._canon(p) for p in points]
        exit_a = np.zeros(n, dtype=int)
        exit_b = np.zeros(n, dtype=int)
        cost_a = np.zeros(n)
        cost_b = np.zeros(n)
        edge_id = np.full(n, -2, dtype=int)
        offs = np.zeros(n)
        for i, c in enumerate(canons):
            exits = self._exits(c)
            (va, ca) = exits[0]
            (vb, cb) = exits[-1]
            exit_a[i], cost_a[i] = self._vindex[va], float(ca)
            exit_b[i], cost_b[i] = self._vindex[vb], float(cb)
            if c[0] == "E":
                edge_id[i] = c[1]
                offs[i] = float(c[2])
        vd = self._vdist_f
        combos = [
            cost_a[:, None] + vd[exit_a[:, None], exit_a[None, :]] + cost_a[None, :],
            cost_a[:, None] + vd[exit_a[:, None], exit_b[None, :]] + cost_b[None, :],
            cost_b[:, None] + vd[exit_b[:, None], exit_a[None, :]] + cost_a[None, :],
            cost_b[:, None] + vd[exit_b[:, None], exit_b[None, :]] + cost_b[None, :],
        ]
        out = np.minimum.reduce(combos)
        same = (edge_id[:, None] == edge_id[None, :]) & (edge_id[:, None] >= -1)
        if same.any():
            gap = np.abs(offs[:, None] - offs[None, :])
            out = np.where(same, gap, out)
        np.fill_diagonal(out, 0.0)
        return out

    def random_point(self, rng, scale=4):
        """Seeded rational point: uniform edge, offset on a 1/16 grid."""
        n_edges = len(self.edges) + (1 if self.ray_at is not None else 0)
        idx = int(rng.integers(0, n_edges))
        k = int(rng.integers(0, 17))
        if idx == len(self.edges):
            span = Fraction(scale) if not isinstance(scale, float) else Fraction(str(scale))
            return Point(self.kind, edge=RAY_EDGE, offset=Fraction(k, 16) * span)
        length = self.edges[idx][2]
        return Point(self.kind, edge=idx, offset=Fraction(k, 16) * length)

    def diameter(self):
        """Largest distance between finite-tree points (ray edge excluded)."""
        return max(max(row.values()) for row in self._vdist.values())


# ---------------------------------------------------------------------------
# convex domains


@dataclass(frozen=True)
class WholeSpace:
    """The entire space (for the box space this is the box itself)."""

    kind = "whole"


@dataclass(frozen=True)
class Ball:
    """Closed metric ball; convex in every provided space."""

    center: Point
    radius: float
    kind = "ball"


@dataclass(frozen=True)
class SubtreeDomain:
    """Subtree induced by a vertex subset; optionally includes the ray edge."""

    vertices: frozenset
    include_ray: bool = False
    kind = "subtree"

    def __init__(self, vertices, include_ray=False):
        object.__setattr__(self, "vertices", frozenset(vertices))
        object.__setattr__(self, "include_ray", include_ray)


def domain_contains(space: Space, domain, p: Point) -> bool:
    """Exact membership predicate of a convex domain.

    Only the point's space kind is validated, not its membership, so the
    predicate can answer False for points outside the space itself (e.g.
    a vector violating the box bounds).
    """
    if not isinstance(p, Point) or p.kind != space.kind:
        raise SpaceMismatchError(f"domain test: expected a {space.kind} point")
    if isinstance(domain, WholeSpace):
        return space.contains_point(p)
    if isinstance(domain, Ball):
        if not space.contains_point(p):
            return False
        return space.distance(domain.center, p) <= domain.radius
    if isinstance(domain, SubtreeDomain):
        if not isinstance(space, RTreeSpace):
            raise SpaceMismatchError("subtree domain requires a tree space")
        if not space.contains_point(p):
            return False
        c = space._canon(p)
        if c[0] == "V":
            return c[1] in domain.vertices
        _, e, _ = c
        if e == RAY_EDGE:
            return domain.include_ray and space.ray_at in domain.vertices
        u, v, _ = space.edges[e]
        return u in domain.vertices and v in domain.vertices
    raise SpaceMismatchError(f"unknown domain spec {domain!r}")


# ---------------------------------------------------------------------------
# seeded sampling


class PointSampler:
    """Deterministic point stream for a space, fixed by (seed, scale)."""

    def __init__(self, space: Space, scale=1.0, seed=0):
        self.space = space
        self.scale = scale
        self.seed = seed
        self._rng = np.random.default_rng(seed)

    def draw(self) -> Point:
        return self.space.random_point(self._rng, self.scale)


# ---------------------------------------------------------------------------
# configuration files


def space_from_config(data: dict) -> Space:
    try:
        kind = data["kind"]
    except KeyError:
        raise ConfigError("space config: missing 'kind'") from None
    if kind == "euclidean":
        return EuclideanSpace(dim=int(data.get("dim", 2)))
    if kind == "hyperbolic":
        return HyperbolicPlane()
    if kind == "l2box":
        return L2BoxSpace(n=int(data.get("n", 6)), base=float(data.get("base", 10.0)))
    if kind == "rtree":
        try:
            vertices = data["vertices"]
            edges = [(u, v, Fraction(str(length))) for u, v, length in data["edges"]]
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(f"rtree config: {exc}") from None
        return RTreeSpace(vertices, edges, ray_at=data.get("ray_at"))
    raise ConfigError(f"space config: unknown kind {kind!r}")


def domain_from_config(space: Space, data: dict | None):
    if data is None:
        return WholeSpace()
    kind = data.get("kind", "whole")
    if kind == "whole":
        return WholeSpace()
    if kind == "ball":
        try:
            center = point_from_json({"kind": space.kind, **data["center"]}
                                     if isinstance(data["center"], dict)
                                     else {"kind": space.kind, "coords": data["center"]})
            return Ball(center, float(data["radius"]))
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"ball domain config: {exc}") from None
    if kind == "subtree":
        try:
            return SubtreeDomain(data["vertices"], bool(data.get("include_ray", False)))
        except KeyError as exc:
            raise ConfigError(f"subtree domain config: missing {exc}") from None
    raise ConfigError(f"domain config: unknown kind {kind!r}")


def space_to_config(space: Space) -> dict:
    if isinstance(space, L2BoxSpace):
        return {"kind": "l2box", "n": space.n, "base": space.base}
    if isinstance(space, EuclideanSpace):
        return {"kind": "euclidean", "dim": space.dim}
    if isinstance(space, HyperbolicPlane):
        return {"kind": "hyperbolic"}
    if isinstance(space, RTreeSpace):
        cfg = {
            "kind": "rtree",
            "vertices": list(space.vertices),
            "edges": [[u, v, str(length)] for u, v, length in space.edges],
        }
        if space.ray_at is not None:
            cfg["ray_at"] = space.ray_at
        return cfg
    raise ConfigError(f"cannot serialize space {space!r}")


def domain_to_config(domain) -> dict:
    if isinstance(domain, WholeSpace):
        return {"kind": "whole"}
    if isinstance(domain, Ball):
        center = point_to_json(domain.center)
        center.pop("kind")
        return {"kind": "ball", "center": center, "radius": domain.radius}
    if isinstance(domain, SubtreeDomain):
        return {"kind": "subtree", "vertices": sorted(domain.vertices, key=str),
                "include_ray": domain.include_ray}
    raise ConfigError(f"cannot serialize domain {domain!r}")


def load_space_config(path):
    """Read a JSON space/domain file, returning (space, domain)."""
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if "space" not in data:
        raise ConfigError(f"{path}: missing 'space' section")
    space = space_from_config(data["space"])
    domain = domain_from_config(space, data.get("domain"))
    return space, domain


# ---------------------------------------------------------------------------
# ready-made fixtures


def tripod(leg=1):
    """Tree with center c and three unit legs to a, b, d."""
    return RTreeSpace(
        ["c", "a", "b", "d"],
        [("c", "a", Fraction(leg)), ("c", "b", Fraction(leg)), ("c", "d", Fraction(leg))],
    )


def ray_tree(trunk=1):
    """Small finite tree plus a half-infinite ray hanging off vertex 'r'."""
    return RTreeSpace(
        ["r", "p", "q"],
        [("r", "p", Fraction(trunk)), ("p", "q", Fraction(trunk))],
        ray_at="r",
    )


def random_tree(rng: np.random.Generator, n_vertices=6, max_num=4):
    """Seeded random tree with rational edge lengths (no ray edge)."""
    names = [f"v{i}" for i in range(n_vertices)]
    edges = []
    for i in range(1, n_vertices):
        parent = int(rng.integers(0, i))
        length = Fraction(int(rng.integers(1, max_num + 1)), int(rng.integers(1, 3)))
        edges.append((names[parent], names[i], length))
    return RTreeSpace(names, edges)
