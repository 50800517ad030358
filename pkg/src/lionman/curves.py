"""Curves, quasi-geodesic verification, and geodesic-ray extraction.

A curve is a finite list of (parameter, point) samples in one space,
interpolated geodesically between consecutive samples, optionally extended
beyond the last sample by a closed-form rule.  The checkers are
falsification-oriented: every "for all s, t" condition is tested on a
parameter grid and the report carries numeric witnesses for the worst and
the first violated pair.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    InsufficientCurveError,
    InsufficientDataError,
    InvalidAlphaError,
    InvalidInputError,
    PromotionPreconditionError,
    UnsupportedSpaceError,
)
from . import spaces
from .spaces import (
    HyperbolicPlane,
    L2BoxSpace,
    Point,
    RAY_EDGE,
    RTreeSpace,
    Segment,
    Space,
)


# ---------------------------------------------------------------------------
# curve type


@dataclass(frozen=True)
class Curve:
    """Piecewise-geodesic path through ordered (parameter, point) samples.

    ``rule`` evaluates parameters beyond the last sample (used for rays);
    within the sampled range evaluation always interpolates between the
    recorded samples.
    """

    space: Space
    params: tuple
    points: tuple
    rule: object = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.params) != len(self.points) or len(self.params) < 1:
            raise InvalidInputError("curve needs matching, nonempty params and points")
        for a, b in zip(self.params, self.params[1:]):
            if not b > a:
                raise InvalidInputError("curve parameters must be strictly increasing")
        for p in self.points:
            self.space.check_point(p, "curve sample")

    @property
    def t_min(self):
        return self.params[0]

    @property
    def t_max(self):
        return self.params[-1]

    def at(self, t) -> Point:
        """Evaluate the curve at parameter t."""
        i = bisect.bisect_left(self.params, t)
        if i < len(self.params) and self.params[i] == t:
            return self.points[i]
        if t > self.params[-1]:
            if self.rule is not None:
                return self.rule(t)
            raise InsufficientCurveError(
                f"parameter {t} beyond last sample {self.params[-1]} and no extension rule")
        if t < self.params[0]:
            raise InsufficientCurveError(f"parameter {t} precedes first sample {self.params[0]}")
        lo, hi = self.params[i - 1], self.params[i]
        u = (t - lo) / (hi - lo)
        return self.space.geodesic_point(self.points[i - 1], self.points[i], u)


def geodesic_segment_curve(space: Space, a: Point, b: Point, n_samples=2) -> Curve:
    """Unit-speed geodesic from a to b, sampled at n_samples parameters."""
    d = float(space.distance(a, b))
    ts = np.linspace(0.0, 1.0, max(2, n_samples))
    params = tuple(t * d for t in ts)
    points = tuple(space.geodesic_point(a, b, float(t)) for t in ts)
    return Curve(space, params, points, meta={"generator": "geodesic"})


def tree_ray_curve(space: RTreeSpace) -> Curve:
    """Geodesic ray along the tree's half-infinite edge, from its anchor."""
    if space.ray_at is None:
        raise UnsupportedSpaceError("tree has no designated ray edge")

    def rule(t):
        off = t if isinstance(t, Fraction) else (Fraction(t) if isinstance(t, int) else float(t))
        return Point("rtree", edge=RAY_EDGE, offset=off)

    params = (Fraction(0), Fraction(1))
    points = (spaces.vertex_point(space.ray_at), rule(Fraction(1)))
    return Curve(space, params, points, rule=rule, meta={"generator": "tree_ray"})


# ---------------------------------------------------------------------------
# reports


@dataclass
class QGReport:
    """Outcome of a (lambda, epsilon) quasi-geodesic grid check.

    Slacks are signed distances to the violated inequality (negative means
    violated); pairs are (s, t) parameters.  ``first_lower_violation`` and
    ``first_upper_violation`` record the lexicographically first violating
    pair as (s, t, distance), or None.
    """

    lam: float
    eps: float
    k: float | None
    n_pairs: int
    passed: bool
    min_ratio: float
    min_ratio_pair: tuple | None
    worst_lower_slack: float
    worst_lower_pair: tuple | None
    worst_lower_dist: float | None
    worst_upper_excess: float
    worst_upper_pair: tuple | None
    first_lower_violation: tuple | None
    first_upper_violation: tuple | None
    max_chord_dist: float | None = None
    chord_bound: float | None = None
    chord_ok: bool | None = None


@dataclass
class DirectionalityReport:
    """Outcome of a directionality check on a curve or a point sequence."""

    b: float
    n_checked: int
    passed: bool
    worst_lower_slack: float
    worst_lower_witness: tuple | None
    worst_upper_slack: float | None = None
    worst_upper_witness: tuple | None = None
    growth: tuple | None = None


@dataclass
class RayApprox:
    """Geodesic-ray approximation extracted from a curve or sequence.

    ``stars[i]`` approximates the ray point at distance ``ks[i]`` from
    ``base``; ``residuals[k]`` is the Cauchy residual history of the
    iteration for that k, and ``stopped[k]`` records why it ended.
    """

    base: Point
    ks: list
    stars: list
    residuals: dict
    stopped: dict
    distance_residuals: list
    nesting_residuals: list
    angle_checks: list | None = None


# ---------------------------------------------------------------------------
# grid machinery


def _merged_params(curve: Curve, grid: int):
    lo, hi = float(curve.t_min), float(curve.t_max)
    merged = set(curve.params)
    merged.update(float(t) for t in np.linspace(lo, hi, max(2, grid)))
    return sorted(merged)


def _curve_eval_many(curve: Curve, params):
    sample_index = {t: i for i, t in enumerate(curve.params)}
    return [curve.points[sample_index[t]] if t in sample_index else curve.at(t)
            for t in params]


def _pair_arrays(space: Space, params, points, k=None):
    """Distance and parameter-gap matrices plus the admissible-pair mask."""
    dmat = space.pairwise_distances(points)
    tarr = np.asarray([float(t) for t in params])
    gaps = np.abs(tarr[:, None] - tarr[None, :])
    mask = np.triu(np.ones_like(gaps, dtype=bool), 1)
    if k is not None:
        mask &= gaps <= float(k) * (1.0 + 1e-12)
    return dmat, gaps, mask


def _worst_pair(values, mask):
    """(value, i, j) minimizing values over masked pairs, lexicographic ties."""
    masked = np.where(mask, values, np.inf)
    flat = int(np.argmin(masked))
    i, j = np.unravel_index(flat, values.shape)
    if not mask[i, j]:
        return None
    return masked[i, j], int(i), int(j)


def _first_violation(slack, mask, tol_mat):
    viol = mask & (slack < -tol_mat)
    idx = np.argwhere(viol)
    if len(idx) == 0:
        return None
    i, j = idx[0]
    return int(i), int(j)


def check_quasi_geodesic(curve: Curve, lam: float, eps: float, grid: int,
                         k=None, tol=None) -> QGReport:
    """Grid check of (1/lam)|s-t| - eps <= d(c(s), c(t)) <= lam|s-t| + eps.

    Tested parameters are the curve's own samples merged with ``grid``
    evenly spaced values; with ``k`` given, only pairs with |s-t| <= k are
    checked.  Violations are judged against a relative tolerance, default
    the space's ``rel_tol``.
    """
    if lam < 1:
        raise InvalidInputError("lambda must be >= 1")
    if eps < 0:
        raise InvalidInputError("epsilon must be >= 0")
    if grid < 2:
        raise InvalidInputError("grid must be >= 2")
    tol = curve.space.rel_tol if tol is None else tol
    params = _merged_params(curve, grid)
    points = _curve_eval_many(curve, params)
    dmat, gaps, mask = _pair_arrays(curve.space, params, points, k)
    n_pairs = int(mask.sum())
    scale = np.maximum(1.0, gaps)
    tol_mat = tol * scale

    lower_slack = dmat - (gaps / lam - eps)
    upper_slack = (lam * gaps + eps) - dmat

    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(gaps > 0, dmat / np.where(gaps > 0, gaps, 1.0), np.inf)
    worst_ratio = _worst_pair(ratios, mask)
    worst_lower = _worst_pair(lower_slack / scale, mask)
    worst_upper = _worst_pair(upper_slack / scale, mask)
    first_lower = _first_violation(lower_slack, mask, tol_mat)
    first_upper = _first_violation(upper_slack, mask, tol_mat)

    def pair(t):
        return None if t is None else (params[t[0]], params[t[1]])

    passed = True
    if worst_lower is not None and worst_lower[0] < -tol:
        passed = False
    if worst_upper is not None and worst_upper[0] < -tol:
        passed = False

    return QGReport(
        lam=float(lam), eps=float(eps), k=None if k is None else float(k),
        n_pairs=n_pairs, passed=passed,
        min_ratio=math.inf if worst_ratio is None else float(worst_ratio[0]),
        min_ratio_pair=pair(worst_ratio and worst_ratio[1:]),
        worst_lower_slack=math.inf if worst_lower is None else float(
            lower_slack[worst_lower[1], worst_lower[2]]),
        worst_lower_pair=pair(worst_lower and worst_lower[1:]),
        worst_lower_dist=None if worst_lower is None else float(
            dmat[worst_lower[1], worst_lower[2]]),
        worst_upper_excess=-math.inf if worst_upper is None else float(
            -upper_slack[worst_upper[1], worst_upper[2]]),
        worst_upper_pair=pair(worst_upper and worst_upper[1:]),
        first_lower_violation=None if first_lower is None else (
            params[first_lower[0]], params[first_lower[1]],
            float(dmat[first_lower[0], first_lower[1]])),
        first_upper_violation=None if first_upper is None else (
            params[first_upper[0]], params[first_upper[1]],
            float(dmat[first_upper[0], first_upper[1]])),
    )


def check_directional_curve(curve: Curve, b: float, grid: int, tol=None) -> DirectionalityReport:
    """Grid check of |s-t| - b <= d(c(s), c(t)) <= |s-t|."""
    if b < 0:
        raise InvalidInputError("b must be >= 0")
    if grid < 2:
        raise InvalidInputError("grid must be >= 2")
    tol = curve.space.rel_tol if tol is None else tol
    params = _merged_params(curve, grid)
    points = _curve_eval_many(curve, params)
    dmat, gaps, mask = _pair_arrays(curve.space, params, points)
    scale = np.maximum(1.0, gaps)

    lower_slack = dmat - (gaps - b)
    upper_slack = gaps - dmat
    worst_lower = _worst_pair(lower_slack / scale, mask)
    worst_upper = _worst_pair(upper_slack / scale, mask)

    def pair(t):
        return None if t is None else (params[t[0]], params[t[1]])

    passed = (worst_lower is None or worst_lower[0] >= -tol) and \
             (worst_upper is None or worst_upper[0] >= -tol)
    return DirectionalityReport(
        b=float(b), n_checked=int(mask.sum()), passed=passed,
        worst_lower_slack=math.inf if worst_lower is None else float(
            lower_slack[worst_lower[1], worst_lower[2]]),
        worst_lower_witness=pair(worst_lower and worst_lower[1:]),
        worst_upper_slack=math.inf if worst_upper is None else float(
            upper_slack[worst_upper[1], worst_upper[2]]),
        worst_upper_witness=pair(worst_upper and worst_upper[1:]),
    )


def check_directional_sequence(space: Space, points, b: float, budget: int,
                               seed=0, tol=None) -> DirectionalityReport:
    """Check d(x_{n_1}, x_{n_l}) >= sum of consecutive gaps - b.

    All contiguous windows are tested exactly; ``budget`` additional sparse
    subsequences are drawn from a seeded generator.  Divergence of
    d(x_0, x_n) is reported as a growth trend, not asserted.
    """
    if len(points) < 2:
        raise InvalidInputError("need at least two points")
    tol = space.rel_tol if tol is None else tol
    dmat = space.pairwise_distances(points)
    n = len(points)
    steps = np.array([dmat[i, i + 1] for i in range(n - 1)])
    prefix = np.concatenate([[0.0], np.cumsum(steps)])

    worst = math.inf
    witness = None
    checked = 0
    for i in range(n - 1):
        for j in range(i + 1, n):
            slack = dmat[i, j] - (prefix[j] - prefix[i] - b)
            checked += 1
            if slack < worst:
                worst, witness = slack, (i, j)

    rng = np.random.default_rng(seed)
    for _ in range(budget if n >= 3 else 0):
        size = int(rng.integers(3, n + 1))
        idx = np.sort(rng.choice(n, size=size, replace=False))
        total = sum(dmat[a, c] for a, c in zip(idx, idx[1:]))
        slack = dmat[idx[0], idx[-1]] - (total - b)
        checked += 1
        if slack < worst:
            worst, witness = slack, tuple(int(v) for v in idx)

    return DirectionalityReport(
        b=float(b), n_checked=checked, passed=worst >= -tol,
        worst_lower_slack=float(worst), worst_lower_witness=witness,
        growth=(float(dmat[0, 1]), float(dmat[0, -1])),
    )


# ---------------------------------------------------------------------------
# local-to-global promotion


def promote_constants(lam: float, M: float, k: float):
    """Global quasi-geodesic constants earned by a k-local one.

    Given a k-local lambda-quasi-geodesic in a space whose
    lambda-quasi-geodesic triangles are M-slim, the curve is globally a
    (lambda*, 2M)-quasi-geodesic with
    lambda* = (1/lambda - 4M/(k/2 + lambda*M))^-1, provided k > 8*lambda*M.
    """
    if lam < 1 or M < 0:
        raise InvalidInputError("need lambda >= 1 and M >= 0")
    if k <= 8 * lam * M:
        raise PromotionPreconditionError(
            f"locality scale k={k} must exceed 8*lambda*M={8 * lam * M}")
    lam_star = 1.0 / (1.0 / lam - 4.0 * M / (k / 2.0 + lam * M))
    return lam_star, 2.0 * M


def verify_promotion(space: Space, curve: Curve, lam: float, M: float,
                     k: float, grid: int) -> QGReport:
    """Check the promoted global bounds plus the 2M-chord-neighborhood claim.

    The caller is responsible for having certified the curve k-locally
    first.  The returned report carries the global (lambda*, 2M) check and,
    in the chord fields, the largest distance from a tested curve point to
    the geodesic segment joining the curve's endpoints.
    """
    lam_star, eps = promote_constants(lam, M, k)
    report = check_quasi_geodesic(curve, lam_star, eps, grid)
    chord = Segment(curve.points[0], curve.points[-1])
    worst = 0.0
    for t in _merged_params(curve, grid):
        p = curve.at(t)
        _, d = space.project_to_segment(p, chord)
        worst = max(worst, float(d))
    report.max_chord_dist = worst
    report.chord_bound = 2.0 * M
    report.chord_ok = worst <= 2.0 * M + space.rel_tol * max(1.0, worst)
    report.passed = report.passed and report.chord_ok
    return report


# ---------------------------------------------------------------------------
# ray extraction


def _geometric_index_points(curve: Curve, alpha: float, n_cap: int):
    """x_0 = c(t0) and x_n = c(t0 + alpha^n) while the curve covers them."""
    t0 = curve.t_min
    xs = [curve.at(t0)]
    n = 1
    while n <= n_cap:
        t = t0 + alpha ** n
        try:
            xs.append(curve.at(t))
        except InsufficientCurveError:
            break
        n += 1
    return xs


def extract_ray_from_quasi_geodesic(space: Space, curve: Curve, lam: float,
                                    alpha: float, k_max: int, delta_star: float,
                                    residual_tol=1e-6, n_cap=60) -> RayApprox:
    """Extract geodesic-ray points from a quasi-geodesic ray.

    Sets x_n at geometrically growing parameters alpha^n, takes the point
    at distance k on each segment [x_0, x_n], and iterates in n until the
    successive residual drops below ``residual_tol``, the growth cap is
    hit, or the curve is exhausted.  Works in the Gromov-hyperbolic
    families (trees and the hyperbolic plane), where the residuals decay
    geometrically like delta_star * k / alpha^n.
    """
    if not isinstance(space, (RTreeSpace, HyperbolicPlane)):
        raise UnsupportedSpaceError(
            f"ray extraction needs a tree or hyperbolic space, got {space.kind}")
    if lam < 1:
        raise InvalidInputError("lambda must be >= 1")
    beta = 1.0 / lam + lam + alpha * (1.0 / lam - lam)
    if alpha <= 1 or beta <= 0:
        raise InvalidAlphaError(
            f"alpha={alpha} gives beta={beta:.6g}; need alpha > 1 and beta > 0")

    xs = _geometric_index_points(curve, alpha, n_cap)
    x0 = xs[0]
    dists = [space.distance(x0, x) for x in xs]

    ks = list(range(1, int(k_max) + 1))
    stars, residuals, stopped = [], {}, {}
    for k in ks:
        usable = [i for i in range(1, len(xs)) if dists[i] >= k]
        if not usable:
            raise InsufficientDataError(f"curve never reaches distance {k} from its base")
        history = []
        prev = None
        star = None
        stop = "exhausted"
        for i in usable:
            t = k / dists[i] if isinstance(dists[i], Fraction) else k / float(dists[i])
            cur = space.geodesic_point(x0, xs[i], t)
            if prev is not None:
                history.append(float(space.distance(prev, cur)))
            star = cur
            prev = cur
            if history and history[-1] < residual_tol:
                stop = "converged"
                break
        stars.append(star)
        residuals[k] = history
        stopped[k] = stop

    dist_resid = [(k, abs(float(space.distance(x0, s)) - k)) for k, s in zip(ks, stars)]
    nest = []
    for a in range(len(ks)):
        for b in range(a + 1, len(ks)):
            kk, ll = ks[a], ks[b]
            ref = space.geodesic_point(x0, stars[b], Fraction(kk, ll))
            nest.append((kk, ll, float(space.distance(stars[a], ref))))
    return RayApprox(base=x0, ks=ks, stars=stars, residuals=residuals,
                     stopped=stopped, distance_residuals=dist_resid,
                     nesting_residuals=nest)


def extract_ray_from_directional_sequence(space: Space, points, b: float,
                                          k_max: int, residual_tol=1e-6,
                                          angle_pairs=100) -> RayApprox:
    """Extract geodesic-ray points from a directional sequence.

    For each k, follows the points at distance k on the segments
    [x_0, x_n]; directionality forces the comparison angles at x_0 to
    collapse, so the sequence is Cauchy in any CAT(0) family.  Also
    records, for sampled index pairs m < n, the comparison-angle bound
    sin^2(angle/2) <= (b/2d_m)(b/(2d_n) + 1).
    """
    if len(points) < 2:
        raise InvalidInputError("need at least two points")
    x0 = points[0]
    dists = [space.distance(x0, p) for p in points]

    ks = list(range(1, int(k_max) + 1))
    stars, residuals, stopped = [], {}, {}
    for k in ks:
        usable = [i for i in range(1, len(points)) if dists[i] >= k]
        if not usable:
            raise InsufficientDataError(f"sequence never reaches distance {k} from x_0")
        history, prev, star = [], None, None
        stop = "exhausted"
        for i in usable:
            t = k / dists[i] if isinstance(dists[i], Fraction) else k / float(dists[i])
            cur = space.geodesic_point(x0, points[i], t)
            if prev is not None:
                history.append(float(space.distance(prev, cur)))
            star, prev = cur, cur
            if history and history[-1] < residual_tol:
                stop = "converged"
                break
        stars.append(star)
        residuals[k] = history
        stopped[k] = stop

    dist_resid = [(k, abs(float(space.distance(x0, s)) - k)) for k, s in zip(ks, stars)]
    nest = []
    for a in range(len(ks)):
        for bdx in range(a + 1, len(ks)):
            kk, ll = ks[a], ks[bdx]
            ref = space.geodesic_point(x0, stars[bdx], Fraction(kk, ll))
            nest.append((kk, ll, float(space.distance(stars[a], ref))))

    pos = [i for i in range(1, len(points)) if dists[i] > 0]
    checks = []
    stride = max(1, len(pos) * (len(pos) - 1) // (2 * angle_pairs))
    count = 0
    for ai in range(len(pos)):
        for bi in range(ai + 1, len(pos)):
            count += 1
            if count % stride:
                continue
            m, n = pos[ai], pos[bi]
            dm, dn = float(dists[m]), float(dists[n])
            dmn = float(space.distance(points[m], points[n]))
            cosv = (dm * dm + dn * dn - dmn * dmn) / (2.0 * dm * dn)
            ang = math.acos(min(1.0, max(-1.0, cosv)))
            lhs = math.sin(ang / 2.0) ** 2
            rhs = (b / (2.0 * dm)) * (b / (2.0 * dn) + 1.0)
            checks.append((m, n, lhs, rhs))
    return RayApprox(base=x0, ks=ks, stars=stars, residuals=residuals,
                     stopped=stopped, distance_residuals=dist_resid,
                     nesting_residuals=nest, angle_checks=checks)


# ---------------------------------------------------------------------------
# explicit curves and generators


def l2_example_curve(n_dims=6, base=10.0, samples_per_leg=0) -> Curve:
    """Corner-to-corner polyline through the exponentially growing box.

    The k-th corner fills coordinates 1..k with base^1, ..., base^k; leg k
    has length base^(k+1) and the breakpoints sit at a_k = sum of the first
    k powers.  The polyline is 1-Lipschitz but not a geodesic ray, while
    remaining a quasi-geodesic: with base 10 it satisfies the global bounds
    with lambda = sqrt(11/3).
    """
    if n_dims < 1:
        raise InvalidInputError("n_dims must be >= 1")
    space = L2BoxSpace(n=n_dims, base=base)
    corners = []
    for k in range(n_dims + 1):
        coords = tuple(base ** (i + 1) if i < k else 0.0 for i in range(n_dims))
        corners.append(Point("l2box", coords))
    breaks = [0.0]
    for k in range(1, n_dims + 1):
        breaks.append(breaks[-1] + base ** k)

    params, points = [], []
    for k in range(n_dims):
        leg = breaks[k + 1] - breaks[k]
        params.append(breaks[k])
        points.append(corners[k])
        for j in range(1, samples_per_leg + 1):
            t = breaks[k] + leg * j / (samples_per_leg + 1)
            u = (t - breaks[k]) / leg
            params.append(t)
            points.append(space.geodesic_point(corners[k], corners[k + 1], u))
    params.append(breaks[-1])
    points.append(corners[-1])
    return Curve(space, tuple(params), tuple(points),
                 meta={"generator": "l2_example",
                       "args": {"n_dims": n_dims, "base": base,
                                "samples_per_leg": samples_per_leg}})


def _perpendicular_displace(space: Space, a: Point, b: Point, t: float, amp: float) -> Point:
    """Point near the geodesic [a, b] at parameter t, pushed sideways by amp."""
    p = space.geodesic_point(a, b, t)
    if amp == 0.0:
        return p
    if isinstance(space, HyperbolicPlane):
        direction = space.tangent_direction(p, b)
        return space.point_toward(p, direction * 1j, amp)
    if isinstance(space, RTreeSpace):
        return p  # no transverse directions inside a tree path
    u = np.asarray(b.coords, dtype=float) - np.asarray(a.coords, dtype=float)
    u = u / np.linalg.norm(u)
    if len(u) == 1:
        return p
    probe = np.zeros_like(u)
    probe[int(np.argmin(np.abs(u)))] = 1.0
    w = probe - np.dot(probe, u) * u
    w = w / np.linalg.norm(w)
    cs = np.asarray(p.coords, dtype=float) + amp * w
    if isinstance(space, L2BoxSpace):
        cs = np.clip(cs, 0.0, np.asarray(space.bounds))
    return Point(space.kind, tuple(float(c) for c in cs))


def zigzag_quasi_geodesic(space: Space, a: Point, b: Point, lam: float,
                          segments=8, rng=None, max_tries=6, away_from=None) -> Curve:
    """Seeded zigzag joining a and b within the (lambda, 0) bounds.

    Interior nodes are pushed off the geodesic by a bounded transverse
    amplitude and the result is re-parameterized by cumulative chord
    length; candidate amplitudes are halved until the quasi-geodesic check
    certifies the bounds, so the construction cannot silently violate
    them.  With lambda = 1 the geodesic itself is returned.  When
    ``away_from`` is given each node is displaced toward whichever side
    increases the distance to that point (used for triangle sides, where
    consistent outward bulging keeps slimness monotone in lambda).
    """
    rng = np.random.default_rng(0) if rng is None else rng
    total = float(space.distance(a, b))
    if total == 0.0:
        raise InvalidInputError("zigzag endpoints must be distinct")
    ts = np.linspace(0.0, 1.0, segments + 1)
    if lam <= 1.0:
        pts = [space.geodesic_point(a, b, float(t)) for t in ts]
        params = _chord_params(space, pts)
        return Curve(space, tuple(params), tuple(pts), meta={"generator": "zigzag", "lam": lam})

    gap = total / segments
    amp = 0.45 * gap * (lam - 1.0) / lam
    signs = rng.choice([-1.0, 1.0])
    mags = rng.uniform(0.6, 1.0, segments + 1)
    for _ in range(max_tries):
        pts = []
        for i, t in enumerate(ts):
            if i == 0 or i == segments:
                pts.append(space.geodesic_point(a, b, float(t)))
                continue
            if away_from is None:
                s = signs if i % 2 == 0 else -signs
                pts.append(_perpendicular_displace(space, a, b, float(t), amp * mags[i] * s))
            else:
                plus = _perpendicular_displace(space, a, b, float(t), amp * mags[i])
                minus = _perpendicular_displace(space, a, b, float(t), -amp * mags[i])
                far = plus if space.distance(plus, away_from) >= space.distance(minus, away_from) else minus
                pts.append(far)
        params = _chord_params(space, pts)
        if any(q <= p for p, q in zip(params, params[1:])):
            amp *= 0.5
            continue
        curve = Curve(space, tuple(params), tuple(pts),
                      meta={"generator": "zigzag", "lam": lam})
        if check_quasi_geodesic(curve, lam, 0.0, 4 * segments).passed:
            return curve
        amp *= 0.5
    pts = [space.geodesic_point(a, b, float(t)) for t in ts]
    return Curve(space, tuple(_chord_params(space, pts)), tuple(pts),
                 meta={"generator": "zigzag", "lam": lam, "fallback": True})


def _chord_params(space: Space, pts):
    params = [0.0]
    for p, q in zip(pts, pts[1:]):
        params.append(params[-1] + float(space.distance(p, q)))
    return params


def hyperbolic_tube_curve(length=32.0, step=1.0, amplitude=0.15, seed=0) -> Curve:
    """Quasi-geodesic ray wobbling inside a tube around a hyperbolic axis.

    The axis is the geodesic ray from the origin along +x; nodes at
    arclength i*step are displaced perpendicular to it by a seeded bounded
    amount (zero at the base), then re-parameterized by cumulative chord
    length.  The true axis point at distance k from the origin is
    (tanh(k/2), 0), which extraction results can be compared against.
    """
    space = HyperbolicPlane()
    rng = np.random.default_rng(seed)
    n = int(round(length / step))
    pts = []
    for i in range(n + 1):
        s = i * step
        axis = Point("hyperbolic", (math.tanh(0.5 * s), 0.0))
        if i == 0:
            pts.append(axis)
            continue
        off = amplitude * float(rng.uniform(-1.0, 1.0))
        direction = space.tangent_direction(axis, Point("hyperbolic", (math.tanh(0.5 * (s + 1.0)), 0.0)))
        pts.append(space.point_toward(axis, direction * 1j, off))
    params = _chord_params(space, pts)
    return Curve(space, tuple(params), tuple(pts),
                 meta={"generator": "hyperbolic_tube",
                       "args": {"length": length, "step": step,
                                "amplitude": amplitude, "seed": seed}})


# ---------------------------------------------------------------------------
# curve files

_GENERATORS = {
    "l2_example": lambda args: l2_example_curve(**args),
    "hyperbolic_tube": lambda args: hyperbolic_tube_curve(**args),
}


def save_curve(curve: Curve, path) -> None:
    data = {
        "space": spaces.space_to_config(curve.space),
        "samples": [[str(t) if isinstance(t, Fraction) else t,
                     spaces.point_to_json(p)]
                    for t, p in zip(curve.params, curve.points)],
    }
    gen = curve.meta.get("generator")
    if gen in _GENERATORS:
        data["generator"] = {"name": gen, "args": curve.meta.get("args", {})}
    elif gen == "tree_ray":
        data["generator"] = {"name": "tree_ray"}
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_curve(path) -> Curve:
    with open(path) as fh:
        data = json.load(fh)
    space = spaces.space_from_config(data["space"])
    gen = data.get("generator")
    if gen is not None:
        name = gen["name"]
        if name == "tree_ray":
            return tree_ray_curve(space)
        if name in _GENERATORS:
            return _GENERATORS[name](gen.get("args", {}))
        raise InvalidInputError(f"unknown curve generator {name!r}")
    params, points = [], []
    for t, pj in data["samples"]:
        params.append(Fraction(t) if isinstance(t, str) else float(t))
        points.append(spaces.point_from_json(pj))
    return Curve(space, tuple(params), tuple(points))
