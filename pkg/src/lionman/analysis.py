"""Post-hoc transcript analysis: turning angles, win curves, capture audits.

A winning man forces the lion's turning angles toward pi; once they clear
an explicit threshold the lion's own path becomes a locally quasi-geodesic
ray, which is the bridge from game outcomes to the existence of geodesic
rays.  On trees the lion's path admits an exact audit: while the gap
exceeds D the path is laying out a geodesic at speed exactly D.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

from .curves import Curve, QGReport, check_quasi_geodesic, extract_ray_from_directional_sequence
from .errors import InvalidInputError, ThresholdNotMetError
from .game import Transcript, classify_outcome, run_game
from .hyperbolicity import alexandrov_angle
from . import spaces
from .spaces import RTreeSpace, Space


@dataclass
class BetaSequence:
    """Lion turning angles beta_n and man-direction angles alpha_n.

    beta_n is the angle at L_n between the directions of L_{n-1} and M_n
    (the latter also being the direction of L_{n+1}); alpha_n is the angle
    at L_n between M_{n-1} and M_n.  Steps where an angle is undefined
    (coincident points, typically after capture) are listed in ``gaps``.
    """

    steps: list
    beta: list
    alpha: list
    gaps: list

    def tail_stats(self, frac=0.2):
        take = max(1, math.ceil(len(self.beta) * frac))
        tail = self.beta[-take:]
        return min(tail), sum(tail) / len(tail)


def beta_angles(space: Space, transcript: Transcript) -> BetaSequence:
    """Angle sequences of a transcript, computed with the exact per-space angles."""
    records = transcript.records
    if len(records) < 2:
        raise InvalidInputError("need at least two recorded steps")
    steps, betas, alphas, gaps = [], [], [], []
    for n in range(1, len(records)):
        prev, cur = records[n - 1], records[n]
        lion = cur.lion
        if space.distance(lion, prev.lion) == 0 or space.distance(lion, cur.man) == 0:
            gaps.append(n)
            continue
        beta = alexandrov_angle(space, lion, prev.lion, cur.man)
        alpha = None
        if space.distance(lion, prev.man) > 0:
            alpha = alexandrov_angle(space, lion, prev.man, cur.man)
        steps.append(n)
        betas.append(beta)
        alphas.append(alpha)
    return BetaSequence(steps=steps, beta=betas, alpha=alphas, gaps=gaps)


def beta_threshold(k, D) -> float:
    """Angle bound pi - pi/(4 ceil(k/D)) that certifies k-local straightness."""
    if not k > 0 or not D > 0:
        raise InvalidInputError("k and D must be positive")
    return math.pi - math.pi / (4 * math.ceil(k / D))


def curve_from_transcript(space: Space, transcript: Transcript, k, D=None):
    """Lion path re-read as a curve once the turning angles clear the threshold.

    Returns (n_k, curve) for the smallest index n_k >= 1 such that every
    recorded angle beta_n with n >= n_k stays above the threshold; the
    curve passes through L_{n_k}, L_{n_k + 1}, ... at parameter speed D.
    Raises ThresholdNotMetError, carrying the best achievable tail bound,
    when no index works through the end of the record.
    """
    D = transcript.D if D is None else D
    theta = beta_threshold(k, D)
    bs = beta_angles(space, transcript)
    if not bs.steps:
        raise InvalidInputError("transcript has no measurable angles")

    guard = 1e-12
    n_k = None
    suffix_ok = True
    for i in range(len(bs.steps) - 1, -1, -1):
        suffix_ok = suffix_ok and bs.beta[i] >= theta - guard
        if suffix_ok:
            n_k = bs.steps[i]
        else:
            break
    if n_k is None:
        best = -math.inf
        running = math.inf
        for b in reversed(bs.beta):
            running = min(running, b)
            best = max(best, running)
        raise ThresholdNotMetError(
            f"no index keeps beta above {theta:.6f} through the record end",
            best_tail=best)

    lions = [r.lion for r in transcript.records] + [transcript.final_lion]
    pts = [lions[n_k]]
    for p, q in zip(lions[n_k:], lions[n_k + 1:]):
        hop = space.distance(p, q)
        if abs(float(hop) - float(D)) > 1e-9 * max(1.0, float(D)):
            break
        pts.append(q)
    if len(pts) < 2:
        raise InvalidInputError("no full-speed lion moves after the threshold index")
    params = tuple(i * D for i in range(len(pts)))
    curve = Curve(space, params, tuple(pts), meta={"generator": "lion_path", "n_k": n_k})
    return n_k, curve


def verify_mans_win_curve(curve: Curve, k, grid: int) -> QGReport:
    """Certify the k-local sqrt(2)-quasi-geodesic property on a grid."""
    return check_quasi_geodesic(curve, math.sqrt(2.0), 0.0, grid, k=k)


@dataclass
class CaptureAudit:
    """Exact audit of the lion path on a tree while the gap exceeds D.

    For each audited step: L_n must lie on [L_0, L_{n+1}] (colinearity
    residual d(L_0,L_n) + d(L_n,L_{n+1}) - d(L_0,L_{n+1})) and the lion
    must be exactly n*D from its start.  A full pass on a capture-free
    transcript certifies the path is laying out a geodesic ray.
    """

    passed: bool
    steps: list
    colinearity: list
    dist_residuals: list
    first_failure: int | None
    final_distance: object | None


def rtree_capture_audit(space: RTreeSpace, transcript: Transcript, D=None,
                        tol=0) -> CaptureAudit:
    if not isinstance(space, RTreeSpace) or transcript.space.kind != "rtree":
        raise InvalidInputError("capture audit requires a tree-space transcript")
    if spaces.space_to_config(space) != spaces.space_to_config(transcript.space):
        raise InvalidInputError("transcript was produced on a different tree")
    D = transcript.D if D is None else D

    lions = [r.lion for r in transcript.records] + [transcript.final_lion]
    L0 = lions[0]
    steps, colin, dist_res = [], [], []
    first_failure = None
    final_distance = None
    for n, rec in enumerate(transcript.records):
        if not rec.dist > D:
            break
        d0n = space.distance(L0, lions[n])
        resid_c = d0n + space.distance(lions[n], lions[n + 1]) - space.distance(L0, lions[n + 1])
        resid_d = abs(d0n - n * D)
        steps.append(n)
        colin.append((n, resid_c))
        dist_res.append((n, resid_d))
        if (resid_c > tol or resid_d > tol) and first_failure is None:
            first_failure = n
    else:
        # no capture inside the record: the final lion position closes the ray
        n = len(transcript.records)
        final_distance = space.distance(L0, lions[n])
        if abs(final_distance - n * D) > tol and first_failure is None:
            first_failure = n
    return CaptureAudit(passed=first_failure is None, steps=steps, colinearity=colin,
                        dist_residuals=dist_res, first_failure=first_failure,
                        final_distance=final_distance)


# ---------------------------------------------------------------------------
# experiment harness


@dataclass
class EquivalenceReport:
    """Desk-scale alignment of boundedness, win/loss, and ray certificates.

    Collates a strategy battery on one domain: per-strategy outcomes, the
    win-curve certificate and exact audit where they apply, and a ray
    extracted from the lion path of a winning man.  ``exploratory`` flags
    families that are not Gromov hyperbolic, where no equivalence is
    claimed.
    """

    space_kind: str
    domain: object
    D: object
    n_steps: int
    runs: list
    certificates: dict
    exploratory: bool
    notes: list


def equivalence_report(space: Space, domain, D, n_steps, tol, lion_start,
                       man_start, seed=0, curve=None, k=None) -> EquivalenceReport:
    from .game import (DirectionalStrategy, GameConfig, GreedyStrategy,
                       StationaryStrategy)

    strategies = [StationaryStrategy(), GreedyStrategy(domain)]
    if curve is not None:
        strategies.append(DirectionalStrategy(curve, D))
    exploratory = space.kind in ("euclidean", "l2box")
    notes = []
    if exploratory:
        notes.append("space is not Gromov hyperbolic; outcomes are exploratory only")

    runs = []
    certificates = {}
    for strat in strategies:
        start = strat.start() if isinstance(strat, DirectionalStrategy) else man_start
        config = GameConfig(space=space, domain=domain, D=D, n_steps=n_steps,
                            tol=tol, lion_start=lion_start, man_start=start, seed=seed)
        tr = run_game(config, strat)
        outcome = classify_outcome(tr)
        runs.append({"strategy": strat.name, "outcome": outcome.classification,
                     "n0": outcome.n0, "tail_min": outcome.tail_min})
        if outcome.classification == "man-wins-observed":
            kk = 12 * D if k is None else k
            try:
                n_k, win_curve = curve_from_transcript(space, tr, kk, D)
                report = verify_mans_win_curve(win_curve, kk, grid=128)
                certificates[strat.name] = {
                    "n_k": n_k, "local_qg_passed": report.passed,
                    "min_ratio": report.min_ratio,
                }
            except ThresholdNotMetError as exc:
                certificates[strat.name] = {"threshold_not_met": float(exc.best_tail)}
            if isinstance(space, RTreeSpace):
                audit = rtree_capture_audit(space, tr, D)
                certificates.setdefault(strat.name, {})["audit_passed"] = audit.passed
                lions = [r.lion for r in tr.records] + [tr.final_lion]
                ray = extract_ray_from_directional_sequence(space, lions, 0.0,
                                                            k_max=min(5, int(float(D) * n_steps)))
                certificates[strat.name]["ray_residual_max"] = max(
                    (max(h) for h in ray.residuals.values() if h), default=0.0)
        if isinstance(space, RTreeSpace) and outcome.classification == "lion-wins-physical":
            audit = rtree_capture_audit(space, tr, D)
            certificates[strat.name] = {"audit_passed": audit.passed,
                                        "capture_step": tr.capture_step}
    return EquivalenceReport(space_kind=space.kind, domain=domain, D=D,
                             n_steps=n_steps, runs=runs, certificates=certificates,
                             exploratory=exploratory, notes=notes)


# ---------------------------------------------------------------------------
# CSV emitters


def write_beta_csv(bs: BetaSequence, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "beta_n", "alpha_n"])
        for n, b, a in zip(bs.steps, bs.beta, bs.alpha):
            w.writerow([n, b, "" if a is None else a])


def write_audit_csv(audit: CaptureAudit, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "colinearity_residual", "distance_residual"])
        for (n, rc), (_, rd) in zip(audit.colinearity, audit.dist_residuals):
            w.writerow([n, float(rc), float(rd)])
