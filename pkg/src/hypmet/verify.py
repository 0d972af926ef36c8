"""Randomized inequality suites and deterministic sharpness probes.

Each suite draws its inputs from a generator seeded by (seed, suite index),
evaluates one family of proven inequalities over many random trials, and
reports every violation beyond the double-precision slack.  The sharpness
probes evaluate the extremal parameter sequences whose ratios converge to
the sharp constants (1/4, 1, log 5/4, 1/2, 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels, metrics, solver
from .domains import BoundaryCloud, HalfSpace, Polygon2D, UnitBall, contains, signed_boundary_dist
from .domains import oval_residuals, oval_trace_full
from .errors import PreconditionError
from .moebius import Invert, MoebiusMap, Orthogonal, Scale, Translate, apply
from .moebius import random_moebius, random_orthogonal

SLACK = 1e-12
LOG54 = math.log(1.25)
LOG3 = math.log(3.0)


# ---------------------------------------------------------------------------
# samplers

_RMAX = 1.0 - 1e-6


def ball_points(rng, m, n=2, rmax=_RMAX):
    """Points uniform in the ball via the radius^{1/n} correction."""
    X = rng.standard_normal((m, n))
    X /= np.linalg.norm(X, axis=1)[:, None]
    return X * (rmax * rng.random(m) ** (1.0 / n))[:, None]


def half_points(rng, m, n=2, h_lo=1e-3, h_hi=1e3, h_scale=3.0):
    """Half-space points with log-uniform heights, exercising both formula cases."""
    X = np.empty((m, n))
    X[:, :-1] = rng.normal(0.0, h_scale, (m, n - 1))
    X[:, -1] = np.exp(rng.uniform(math.log(h_lo), math.log(h_hi), m))
    return X


def convex_polygon(rng, k_lo=8, k_hi=32, radial=None) -> Polygon2D:
    """Random convex polygon: sorted angles on a random ellipse."""
    k = int(rng.integers(k_lo, k_hi + 1))
    ang = np.sort(rng.uniform(0.0, 2.0 * np.pi, k))
    if radial is None:
        a, b = rng.uniform(0.5, 1.5, 2)
        rot = rng.uniform(0.0, 2.0 * np.pi)
        c, s = math.cos(rot), math.sin(rot)
        ex = np.stack([a * np.cos(ang), b * np.sin(ang)], axis=1)
        R = np.array([[c, -s], [s, c]])
        v = ex @ R.T + rng.uniform(-0.2, 0.2, 2)
    else:
        v = radial * np.stack([np.cos(ang), np.sin(ang)], axis=1)
    return Polygon2D(v)


def points_in_polygon(rng, P: Polygon2D, m, margin: float = 0.0):
    """Rejection-sample interior points; margin is relative to the bbox extent."""
    lo = P.vertices.min(axis=0)
    hi = P.vertices.max(axis=0)
    clearance = margin * float(np.max(hi - lo))
    out = []
    while len(out) < m:
        cand = rng.uniform(lo, hi, (4 * m, 2))
        for c in cand:
            if contains(P, c) and signed_boundary_dist(P, c) > clearance:
                out.append(c)
                if len(out) == m:
                    break
    return np.array(out)


# ---------------------------------------------------------------------------
# vectorized metric formulas (ball / half plane)


def _norms(X):
    return np.linalg.norm(X, axis=1)


def rho_ball_vec(X, Y):
    s = _norms(X - Y)
    nx, ny = _norms(X), _norms(Y)
    den = np.sqrt((1.0 - nx) * (1.0 + nx) * (1.0 - ny) * (1.0 + ny))
    return 2.0 * np.arcsinh(s / den)


def rho_half_vec(X, Y):
    s = _norms(X - Y)
    return 2.0 * np.arcsinh(s / (2.0 * np.sqrt(X[:, -1] * Y[:, -1])))


def j_ball_vec(X, Y):
    dmin = np.minimum(1.0 - _norms(X), 1.0 - _norms(Y))
    return np.log1p(_norms(X - Y) / dmin)


def j_half_vec(X, Y):
    dmin = np.minimum(X[:, -1], Y[:, -1])
    return np.log1p(_norms(X - Y) / dmin)


def ttau_ball_vec(X, Y):
    return np.log1p(_norms(X - Y) / np.sqrt(solver.min_product_ball_batch(X, Y)))


def ttau_half_vec(X, Y):
    return np.log1p(_norms(X - Y) / np.sqrt(solver.min_product_half_batch(X, Y)))


def bounds_ball_vec(X, Y):
    s = _norms(X - Y)
    t = _norms(X + Y)
    q = t * t + s * s
    with np.errstate(divide="ignore", invalid="ignore"):
        case1 = np.log1p(2.0 * np.sqrt(s * np.sqrt(q) / (4.0 - q)))
        case2 = np.log1p(2.0 * s / np.sqrt((2.0 - t) ** 2 + s * s))
        lower = np.where(t * (1.0 + 4.0 / q) <= 4.0, case1, case2)
        lower = np.where(s == 0.0, 0.0, lower)
        has_up = t + s < 2.0
        upper = np.where(has_up, np.log1p(2.0 * s / np.sqrt((2.0 - t) ** 2 - s * s)), np.inf)
    return lower, upper, has_up


def bounds_half_vec(X, Y):
    s = _norms(X - Y)
    d = 0.5 * (X[:, -1] + Y[:, -1])
    lower = np.where(s > 2.0 * d, np.log1p(np.sqrt(s / d)), np.log1p(2.0 * s / np.sqrt(4.0 * d * d + s * s)))
    has_up = s < 2.0 * d
    with np.errstate(divide="ignore", invalid="ignore"):
        upper = np.where(has_up, np.log1p(2.0 * s / np.sqrt(4.0 * d * d - s * s)), np.inf)
    return lower, upper, has_up


def _ttau_collinear_signed(n1, n2, s):
    # |x'| carries the sign of the position along the axis; 1 - n1 equals
    # 1 + |x'| on the negative side, so one expression covers both branches
    return np.log1p(s / np.sqrt((1.0 - n1) * (1.0 - n2)))


def _ttau_equal_norm_vec(r2, splus, d):
    b1 = np.log1p(np.sqrt(2.0 * np.sqrt(r2) * d / (1.0 - r2)))
    with np.errstate(invalid="ignore"):
        b2 = np.log1p(d / np.sqrt(1.0 + r2 - splus))
    return np.where(splus <= 4.0 * r2 / (1.0 + r2), b1, b2)


# ---------------------------------------------------------------------------
# suite report plumbing


@dataclass
class SuiteReport:
    suite: str
    trials: int
    seed: int
    violations: list = field(default_factory=list)
    max_slack_violation: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "violations": self.violations,
            "max_slack_violation": self.max_slack_violation,
        }


class _Recorder:
    def __init__(self, report: SuiteReport, tol: float = SLACK):
        self.report = report
        self.tol = tol

    def check(self, label, lhs, rhs, inputs=None, tol=None):
        """Record violations of lhs <= rhs beyond the slack tolerance."""
        tol = self.tol if tol is None else tol
        lhs = np.atleast_1d(np.asarray(lhs, dtype=float))
        rhs = np.atleast_1d(np.asarray(rhs, dtype=float))
        slack = rhs - lhs
        bad = np.where(slack < -tol)[0]
        for i in bad:
            entry = {"check": label, "lhs": float(lhs[i]), "rhs": float(rhs[i]), "slack": float(slack[i])}
            if inputs is not None:
                entry["inputs"] = [np.asarray(a[i]).tolist() for a in inputs]
            self.report.violations.append(entry)
            self.report.max_slack_violation = max(self.report.max_slack_violation, float(-slack[i]))

    def check_abs(self, label, a, b, tol, inputs=None):
        """Record violations of |a - b| <= tol."""
        a = np.atleast_1d(np.asarray(a, dtype=float))
        b = np.atleast_1d(np.asarray(b, dtype=float))
        diff = np.abs(a - b)
        bad = np.where(diff > tol)[0]
        for i in bad:
            entry = {"check": label, "lhs": float(a[i]), "rhs": float(b[i]), "slack": float(tol - diff[i])}
            if inputs is not None:
                entry["inputs"] = [np.asarray(arr[i]).tolist() for arr in inputs]
            self.report.violations.append(entry)
            self.report.max_slack_violation = max(self.report.max_slack_violation, float(diff[i] - tol))


# ---------------------------------------------------------------------------
# suites


def _suite_ball_sandwich(trials, rng, rec):
    X = ball_points(rng, trials)
    Y = ball_points(rng, trials)
    tt = ttau_ball_vec(X, Y)
    rh = rho_ball_vec(X, Y)
    rec.check("quarter_rho_le_ttau", 0.25 * rh, tt, (X, Y))
    rec.check("ttau_le_rho", tt, rh, (X, Y))
    rec.check("ttau_le_half_rho_plus_log54", tt, 0.5 * rh + LOG54, (X, Y))


def _suite_half_sandwich(trials, rng, rec):
    X = half_points(rng, trials)
    Y = half_points(rng, trials)
    tt = ttau_half_vec(X, Y)
    rh = rho_half_vec(X, Y)
    rec.check("quarter_rho_le_ttau", 0.25 * rh, tt, (X, Y))
    rec.check("ttau_le_rho", tt, rh, (X, Y))
    rec.check("ttau_le_half_rho_plus_log54", tt, 0.5 * rh + LOG54, (X, Y))


def _suite_j_sandwich(trials, rng, rec):
    for kind in ("ball", "half"):
        m = trials // 2
        if kind == "ball":
            X, Y = ball_points(rng, m), ball_points(rng, m)
            rh, jj, tt = rho_ball_vec(X, Y), j_ball_vec(X, Y), ttau_ball_vec(X, Y)
        else:
            X, Y = half_points(rng, m), half_points(rng, m)
            rh, jj, tt = rho_half_vec(X, Y), j_half_vec(X, Y), ttau_half_vec(X, Y)
        rec.check(f"{kind}:half_rho_le_j", 0.5 * rh, jj, (X, Y))
        rec.check(f"{kind}:j_le_rho", jj, rh, (X, Y))
        rec.check(f"{kind}:half_j_le_ttau", 0.5 * jj, tt, (X, Y))
        rec.check(f"{kind}:ttau_le_j", tt, jj, (X, Y))
        rec.check(f"{kind}:ttau_le_half_j_plus_half_log3", tt, 0.5 * jj + 0.5 * LOG3, (X, Y))


def _suite_tau_sandwich(trials, rng, rec):
    for kind in ("ball", "half"):
        m = trials // 2
        if kind == "ball":
            D = UnitBall(2)
            X, Y = ball_points(rng, m, rmax=0.999), ball_points(rng, m, rmax=0.999)
        else:
            D = HalfSpace(2)
            X, Y = half_points(rng, m, h_lo=0.01, h_hi=100.0), half_points(rng, m, h_lo=0.01, h_hi=100.0)
        for i in range(m):
            tt = metrics.ttau(D, X[i], Y[i], method="numeric").value
            tv = metrics.tau(D, X[i], Y[i], budget=256).value
            rec.check(f"{kind}:half_tau_le_ttau", 0.5 * tv, tt, (X[i : i + 1], Y[i : i + 1]))
            rec.check(f"{kind}:ttau_le_tau", tt, tv, (X[i : i + 1], Y[i : i + 1]))


def _suite_bounds_sandwich(trials, rng, rec):
    m = trials // 2
    X, Y = ball_points(rng, m), ball_points(rng, m)
    tt = ttau_ball_vec(X, Y)
    lo, up, has = bounds_ball_vec(X, Y)
    rec.check("ball:lower_le_ttau", lo, tt, (X, Y))
    rec.check("ball:ttau_le_upper", np.where(has, tt, 0.0), np.where(has, up, 1.0), (X, Y))
    X, Y = half_points(rng, m), half_points(rng, m)
    tt = ttau_half_vec(X, Y)
    lo, up, has = bounds_half_vec(X, Y)
    rec.check("half:lower_le_ttau", lo, tt, (X, Y))
    rec.check("half:ttau_le_upper", np.where(has, tt, 0.0), np.where(has, up, 1.0), (X, Y))


def _rotation_ball_pairs(rng, m):
    """Ball pairs whose rotated comparison pairs stay inside the disk."""
    X = np.empty((m, 2))
    Y = np.empty((m, 2))
    got = 0
    while got < m:
        A = ball_points(rng, 2 * (m - got))
        B = ball_points(rng, 2 * (m - got))
        mid = 0.5 * _norms(A + B)
        h = 0.5 * _norms(A - B)
        ok = (mid + h < 1.0 - 1e-9) & (h > 0)
        take = min(int(ok.sum()), m - got)
        sel = np.where(ok)[0][:take]
        X[got : got + take] = A[sel]
        Y[got : got + take] = B[sel]
        got += take
    return X, Y


def _suite_rotation_order(trials, rng, rec):
    m = trials // 2
    # disk frame
    X, Y = _rotation_ball_pairs(rng, m)
    tt = ttau_ball_vec(X, Y)
    mid = 0.5 * _norms(X + Y)
    h = 0.5 * _norms(X - Y)
    s = 2.0 * h
    primed = _ttau_collinear_signed(mid - h, mid + h, s)
    r2 = mid * mid + h * h
    dprimed = _ttau_equal_norm_vec(r2, 2.0 * mid, s)
    rec.check("ball:ttau_dprime_le_ttau", dprimed, tt, (X, Y))
    rec.check("ball:ttau_le_ttau_prime", tt, primed, (X, Y))
    # half-plane frame
    X = half_points(rng, m, h_lo=0.01, h_hi=100.0)
    Y = half_points(rng, m, h_lo=0.01, h_hi=100.0)
    mid2 = 0.5 * (X[:, 1] + Y[:, 1])
    h = 0.5 * _norms(X - Y)
    keep = mid2 - h > 1e-12 * np.maximum(mid2, 1.0)
    X, Y, mid2, h = X[keep], Y[keep], mid2[keep], h[keep]
    tt = ttau_half_vec(X, Y)
    s = 2.0 * h
    primed = np.log1p(s / np.sqrt((mid2 - h) * (mid2 + h)))
    dprimed = np.where(s > 2.0 * mid2, np.log1p(np.sqrt(s / mid2)),
                       np.log1p(2.0 * s / np.sqrt(4.0 * mid2**2 + s * s)))
    rec.check("half:ttau_dprime_le_ttau", dprimed, tt, (X, Y))
    rec.check("half:ttau_le_ttau_prime", tt, primed, (X, Y))


def _suite_moebius_distortion(trials, rng, rec):
    D = UnitBall(2)
    for i in range(trials):
        tr = np.random.default_rng((rec.report.seed, 6, i))
        f = random_moebius(tr, 2, pole_clear=1.0)
        x, y = ball_points(tr, 2, rmax=0.999)
        base = metrics.ttau(D, x, y, method="numeric").value
        img = metrics.ttau_image(D, f, x, y, samples=4096).value
        rec.check("half_ttau_le_image", 0.5 * base, img, (x[None, :], y[None, :]), tol=1e-9)
        rec.check("image_le_twice_ttau", img, 2.0 * base, (x[None, :], y[None, :]), tol=1e-9)


def _suite_absratio_invariance(trials, rng, rec):
    for i in range(trials):
        tr = np.random.default_rng((rec.report.seed, 7, i))
        v0 = tr.standard_normal(2) * 1.5
        f = MoebiusMap(
            (Translate(v0), Invert(), Orthogonal(random_orthogonal(tr, 2)),
             Scale(float(np.exp(tr.uniform(-1.5, 1.5)))), Translate(tr.standard_normal(2))),
            2,
        )
        pole = -v0
        while True:
            Q = tr.standard_normal((4, 2)) * 1.5
            d = np.linalg.norm(Q - pole[None, :], axis=1).min()
            pair_d = min(
                np.linalg.norm(Q[a] - Q[b]) for a in range(4) for b in range(a + 1, 4)
            )
            if d > 1e-2 and pair_d > 1e-6:
                break
        from .geometry import absolute_ratio

        ar1 = absolute_ratio(*Q)
        img = [apply(f, q) for q in Q]
        ar2 = absolute_ratio(*img)
        rec.check_abs("absratio_invariant", ar1, ar2, 1e-9 * max(abs(ar1), 1.0), (Q[None, 0], Q[None, 1]))


def _suite_tau_invariance(trials, rng, rec):
    for i in range(trials):
        tr = np.random.default_rng((rec.report.seed, 8, i))
        P = convex_polygon(tr)
        # a 5% interior margin keeps the pair kernel resolvable by the grid
        x, y = points_in_polygon(tr, P, 2, margin=0.05)
        if np.linalg.norm(x - y) < 1e-6:
            continue
        clear = float(np.max(np.linalg.norm(P.vertices, axis=1))) + 0.5
        f = random_moebius(tr, 2, pole_clear=clear)
        t1 = metrics.tau(P, x, y, budget=1024).value
        t2 = metrics.tau_image(P, f, x, y, budget=1024).value
        rec.check_abs("tau_moebius_invariant", t1, t2, 1e-3, (x[None, :], y[None, :]))


def _suite_metric_axioms(trials, rng, rec):
    per = max(trials // 4, 1)
    domains_list = [UnitBall(2), HalfSpace(2)]
    for k in range(per):
        tr = np.random.default_rng((rec.report.seed, 9, k))
        poly = convex_polygon(tr)
        cloud_ang = np.sort(tr.uniform(0, 2 * np.pi, 128))
        cloud = BoundaryCloud(2.0 * np.stack([np.cos(cloud_ang), np.sin(cloud_ang)], axis=1))
        for D in domains_list + [poly, cloud]:
            if isinstance(D, UnitBall):
                pts = ball_points(tr, 3)
            elif isinstance(D, HalfSpace):
                pts = half_points(tr, 3)
            elif isinstance(D, Polygon2D):
                pts = points_in_polygon(tr, D, 3)
            else:
                pts = ball_points(tr, 3)  # strictly inside the radius-2 cloud circle
            x, y, z = pts
            vxy = metrics.ttau(D, x, y).value
            vyx = metrics.ttau(D, y, x).value
            rec.check("symmetry_le", vxy, vyx, tol=0.0)
            rec.check("symmetry_ge", vyx, vxy, tol=0.0)
            vxz = metrics.ttau(D, x, z).value
            vyz = metrics.ttau(D, y, z).value
            rec.check("triangle", vxz, vxy + vyz, (x[None, :], y[None, :], z[None, :]))


def _suite_domain_monotonicity(trials, rng, rec):
    for k in range(trials):
        tr = np.random.default_rng((rec.report.seed, 10, k))
        P = convex_polygon(tr, radial=1.0)  # inscribed in the unit circle
        x, y = points_in_polygon(tr, P, 2)
        big = metrics.ttau(UnitBall(2), x, y).value
        small = metrics.ttau(P, x, y).value
        rec.check("ttau_larger_domain_le", big, small, (x[None, :], y[None, :]))


def _suite_similarity_invariance(trials, rng, rec):
    for k in range(trials):
        tr = np.random.default_rng((rec.report.seed, 11, k))
        lam = float(np.exp(tr.uniform(-2.0, 2.0)))
        Q = random_orthogonal(tr, 2)
        b = tr.standard_normal(2) * 3.0
        f = MoebiusMap((Orthogonal(Q), Scale(lam), Translate(b)), 2)
        if k % 2 == 0:
            D = UnitBall(2)
            x, y = ball_points(tr, 2, rmax=0.999)
            v1 = metrics.ttau(D, x, y, method="numeric").value
            v2 = metrics.ttau_image(D, f, x, y, samples=4096).value
        else:
            D = convex_polygon(tr)
            x, y = points_in_polygon(tr, D, 2)
            v1 = metrics.ttau(D, x, y).value
            D2 = Polygon2D(D.vertices @ Q.T * lam + b)
            v2 = metrics.ttau(D2, Q @ x * lam + b, Q @ y * lam + b).value
        rec.check_abs("ttau_similarity_invariant", v1, v2, 1e-12 * max(v1, 1.0), (x[None, :], y[None, :]))


def _suite_oval_geometry(trials, rng, rec):
    from .domains import CassinianOval, maximal_oval

    third = max(trials // 3, 1)
    for k in range(third):
        tr = np.random.default_rng((rec.report.seed, 12, k))
        f1 = tr.uniform(-2, 2, 2)
        f2 = tr.uniform(-2, 2, 2)
        if np.linalg.norm(f1 - f2) < 1e-3:
            f2 = f1 + np.array([0.5, 0.0])
        b = float(np.exp(tr.uniform(math.log(0.1), math.log(3.0))))
        C = CassinianOval(f1, f2, b)
        th, br, pts = oval_trace_full(C, 720)
        rec.check_abs("trace_residual", oval_residuals(C, pts), np.zeros(len(pts)), 1e-9)
        radii = np.linalg.norm(pts - C.midpoint[None, :], axis=1)
        rec.check_abs("max_radius", np.array([radii.max()]), np.array([math.hypot(C.a, C.b)]), 1e-9)
        # radius is monotone in the focal-axis coordinate where it is positive
        u = (C.focus2 - C.focus1) / (2.0 * C.a)
        p1 = (pts - C.midpoint[None, :]) @ u
        sel = p1 > 0
        order = np.argsort(p1[sel])
        rr = radii[sel][order]
        if rr.size > 1:
            rec.check("radius_monotone", rr[:-1], rr[1:])
    for k in range(trials - third):
        tr = np.random.default_rng((rec.report.seed, 12, third + k))
        kind = k % 3
        if kind == 0:
            D = UnitBall(2)
            x, y = ball_points(tr, 2, rmax=0.95)
        elif kind == 1:
            D = HalfSpace(2)
            x, y = half_points(tr, 2, h_lo=0.05, h_hi=20.0)
        else:
            D = convex_polygon(tr)
            x, y = points_in_polygon(tr, D, 2)
        if np.linalg.norm(x - y) < 1e-9:
            continue
        ov, tangent = maximal_oval(D, x, y)
        pts = oval_trace_full(ov, 360)[2]
        sd = np.array([signed_boundary_dist(D, p) for p in pts])
        rec.check("oval_inside_closure", np.zeros(len(pts)), sd + 1e-7, tol=0.0)
        tt = metrics.ttau(D, x, y).value
        via_oval = math.log1p(float(np.linalg.norm(x - y)) / ov.b)
        rec.check_abs("ttau_from_maximal_oval", np.array([via_oval]), np.array([tt]), 1e-9)


def _suite_cross_formula(trials, rng, rec):
    third = max(trials // 3, 1)
    # ball axis pairs: arsinh form against the axis log form
    r = rng.uniform(-0.999, 0.999, third)
    s = rng.uniform(-0.999, 0.999, third)
    lo = np.minimum(r, s)
    hi = np.maximum(r, s)
    flip = hi <= 0.0
    lo2 = np.where(flip, -hi, lo)
    hi2 = np.where(flip, -lo, hi)
    vals_a = []
    vals_b = []
    for i in range(third):
        if hi2[i] - lo2[i] < 1e-9:
            hi2[i] = lo2[i] + 1e-6
        vals_a.append(metrics.rho(UnitBall(2), [lo2[i], 0.0], [hi2[i], 0.0]).value)
        vals_b.append(metrics.rho_axis("ball", float(lo2[i]), float(hi2[i])))
    rec.check_abs("sinh_vs_axis_ball", np.array(vals_a), np.array(vals_b), 1e-12)
    # half-space axis pairs
    h = np.exp(rng.uniform(math.log(1e-3), math.log(1e3), (third, 2)))
    lo_h = h.min(axis=1)
    hi_h = np.where(h.max(axis=1) > lo_h, h.max(axis=1), lo_h * (1 + 1e-6))
    vals_a = [metrics.rho(HalfSpace(2), [0.0, lo_h[i]], [0.0, hi_h[i]]).value for i in range(third)]
    vals_b = [metrics.rho_axis("halfspace", float(lo_h[i]), float(hi_h[i])) for i in range(third)]
    rec.check_abs("cosh_vs_axis_half", np.array(vals_a), np.array(vals_b), 1e-12)
    # supremum form against the closed form
    m = trials - 2 * third
    for i in range(m):
        tr = np.random.default_rng((rec.report.seed, 13, i))
        if i % 2 == 0:
            D = UnitBall(2)
            x, y = ball_points(tr, 2, rmax=0.99)
        else:
            D = HalfSpace(2)
            x, y = half_points(tr, 2, h_lo=0.05, h_hi=20.0, h_scale=2.0)
        if np.linalg.norm(x - y) < 1e-9:
            continue
        v1 = metrics.rho_sup_absratio(D, x, y, budget=2048).value
        v2 = metrics.rho(D, x, y).value
        rec.check_abs("rho_sup_vs_rho", np.array([v1]), np.array([v2]), 1e-4, (x[None, :], y[None, :]))


def _suite_reduction_3d(trials, rng, rec):
    m = trials // 2
    for i in range(m):
        tr = np.random.default_rng((rec.report.seed, 14, i))
        x, y = ball_points(tr, 2, n=3, rmax=0.995)
        v1 = metrics.ttau(UnitBall(3), x, y, method="numeric").value
        v2 = metrics.ttau(UnitBall(3), x, y, method="oracle", oracle_samples=1_000_000).value
        rec.check_abs("ball3_reduction_vs_oracle", np.array([v1]), np.array([v2]), 1e-5, (x[None, :], y[None, :]))
    for i in range(trials - m):
        tr = np.random.default_rng((rec.report.seed, 14, m + i))
        x, y = half_points(tr, 2, n=3, h_lo=0.1, h_hi=10.0, h_scale=2.0)
        v1 = metrics.ttau(HalfSpace(3), x, y, method="numeric").value
        v2 = metrics.ttau(HalfSpace(3), x, y, method="oracle", oracle_samples=1_000_000).value
        rec.check_abs("half3_reduction_vs_oracle", np.array([v1]), np.array([v2]), 1e-5, (x[None, :], y[None, :]))


_SUITES = {
    "ball-sandwich": (100_000, _suite_ball_sandwich),
    "half-space-sandwich": (100_000, _suite_half_sandwich),
    "j-sandwich": (100_000, _suite_j_sandwich),
    "tau-sandwich": (1_000, _suite_tau_sandwich),
    "bounds-sandwich": (100_000, _suite_bounds_sandwich),
    "rotation-order": (100_000, _suite_rotation_order),
    "moebius-distortion": (10_000, _suite_moebius_distortion),
    "absratio-invariance": (100_000, _suite_absratio_invariance),
    "tau-invariance": (100, _suite_tau_invariance),
    "metric-axioms": (2_000, _suite_metric_axioms),
    "domain-monotonicity": (1_000, _suite_domain_monotonicity),
    "similarity-invariance": (1_000, _suite_similarity_invariance),
    "oval-geometry": (1_000, _suite_oval_geometry),
    "cross-formula": (1_000, _suite_cross_formula),
    "reduction-3d": (200, _suite_reduction_3d),
}


def suite_names() -> list:
    return list(_SUITES)


def run_suite(name: str, trials: int | None = None, seed: int = 42) -> SuiteReport:
    """Run one inequality suite; deterministic given (name, trials, seed)."""
    if name not in _SUITES:
        raise PreconditionError(f"unknown suite {name!r}; known: {', '.join(_SUITES)}")
    default_trials, fn = _SUITES[name]
    trials = default_trials if trials is None else trials
    if trials < 1:
        raise PreconditionError("trials must be at least 1")
    report = SuiteReport(suite=name, trials=trials, seed=seed)
    rng = np.random.default_rng((seed, list(_SUITES).index(name)))
    fn(trials, rng, _Recorder(report))
    return report


# ---------------------------------------------------------------------------
# sharpness probes


class SharpnessSequence(Enum):
    BALL_LOWER = "ball-lower"
    BALL_UPPER = "ball-upper"
    BALL_ADDITIVE = "ball-additive"
    HALF_LOWER = "half-lower"
    HALF_UPPER = "half-upper"
    HALF_ADDITIVE = "half-additive"
    MOEB_LOWER = "moeb-lower"
    MOEB_UPPER = "moeb-upper"


@dataclass
class SharpnessProbe:
    sequence_id: str
    t: float
    observed: float
    target: float

    def to_json(self) -> dict:
        return {
            "sequence": self.sequence_id,
            "t": self.t,
            "observed": self.observed,
            "target": self.target,
        }


def _probe_ball_lower(t):
    # antipodal pair t e1, -t e1: ratio of the Cassinian to the hyperbolic metric
    if not 0.0 < t < 1.0:
        raise PreconditionError("ball-lower needs t in (0, 1)")
    tt = math.log1p(2.0 * t / math.sqrt((1.0 - t) * (1.0 + t)))
    rh = 2.0 * math.log((1.0 + t) / (1.0 - t))
    return tt / rh


def _probe_ball_upper(t):
    # pair t e1, (t + (1-t)^2) e1 approaching the boundary together
    if not 0.0 < t < 1.0:
        raise PreconditionError("ball-upper needs t in (0, 1)")
    u = 1.0 - t
    tt = math.log1p(u / math.sqrt(t))
    rh = math.log((2.0 - u + u * u) / ((1.0 - u) * (2.0 - u)))
    return tt / rh


def _probe_ball_additive(t):
    # x = (t + (1-t)^2) e1, y = (t + (1-t)^5) e1; additive gap to rho/2
    if not 0.0 < t < 1.0:
        raise PreconditionError("ball-additive needs t in (0, 1)")
    u = 1.0 - t
    xs = t + u * u
    ys = t + u**5
    s = u * u - u**5
    one_minus_x = u * t
    one_minus_y = u * (1.0 - u**4)
    tt = math.log1p(s / math.sqrt(one_minus_x * one_minus_y))
    rh = math.log((1.0 + xs) * one_minus_y / (one_minus_x * (1.0 + ys)))
    return tt - 0.5 * rh


def _probe_half_lower(t):
    # pair t e1 + e_n, e_n with growing horizontal separation
    if t <= 2.0:
        raise PreconditionError("half-lower needs t > 2")
    return math.log1p(math.sqrt(t)) / (2.0 * math.asinh(0.5 * t))


def _probe_half_upper(t):
    # vertical pair t e_n, (1/t) e_n collapsing to a point
    if t <= 1.0:
        raise PreconditionError("half-upper needs t > 1")
    return math.log1p(t - 1.0 / t) / (2.0 * math.log(t))


def _probe_half_additive(_t):
    # the fixed pair 2 e_n, e_n/2 attains the additive bound exactly
    v_tt = metrics.ttau(HalfSpace(2), [0.0, 2.0], [0.0, 0.5]).value
    v_rh = metrics.rho(HalfSpace(2), [0.0, 2.0], [0.0, 0.5]).value
    return v_tt - 0.5 * v_rh


def _probe_moeb_lower(t):
    # vertical pair through the canonical half-space-to-ball map
    if t <= 1.0:
        raise PreconditionError("moeb-lower needs t > 1")
    rt = math.sqrt(t)
    return math.log1p(rt - 1.0 / rt) / math.log1p(t - 1.0 / t)


def _probe_moeb_upper(t):
    # horizontal pair through the canonical map; the image denominator
    # t^2 + 4 - t sqrt(t^2+4) is evaluated as 4 sqrt(t^2+4)/(sqrt(t^2+4)+t)
    if t <= 2.0:
        raise PreconditionError("moeb-upper needs t > 2")
    rt = math.hypot(t, 2.0)
    denom = 4.0 * rt / (rt + t)
    return math.log1p(t / math.sqrt(denom)) / math.log1p(math.sqrt(t))


_PROBES = {
    "ball-lower": (_probe_ball_lower, 0.25, 1.0 - 1e-6, 0.25, 0.005, [1.0 - 1e-2, 1.0 - 1e-4, 1.0 - 1e-6]),
    "ball-upper": (_probe_ball_upper, 1.0, 1.0 - 1e-3, 1.0, 0.01, [1.0 - 1e-2, 1.0 - 1e-3]),
    "ball-additive": (_probe_ball_additive, LOG54, 1e-4, LOG54, 1e-3, [1e-2, 1e-3, 1e-4]),
    "half-lower": (_probe_half_lower, 0.25, 1e8, 0.25, 0.005, [1e3, 1e6, 1e9, 1e12]),
    "half-upper": (_probe_half_upper, 1.0, 1.0 + 1e-6, 1.0, 0.01, [1.0 + 1e-2, 1.0 + 1e-4, 1.0 + 1e-6]),
    "half-additive": (_probe_half_additive, LOG54, 0.0, LOG54, 1e-12, [0.0]),
    "moeb-lower": (_probe_moeb_lower, 0.5, 1e6, 0.5, 1e-3, [1e3, 1e6, 1e9, 1e12]),
    "moeb-upper": (_probe_moeb_upper, 2.0, 1e6, 1.949, 0.01, [1e3, 1e6, 1e9, 1e12]),
}


def sequence_names() -> list:
    return list(_PROBES)


def sharpness_probe(sequence_id: str, t: float | None = None) -> SharpnessProbe:
    """Evaluate one extremal-sequence probe at parameter t."""
    if sequence_id not in _PROBES:
        raise PreconditionError(f"unknown sequence {sequence_id!r}; known: {', '.join(_PROBES)}")
    fn, target, default_t, _, _, _ = _PROBES[sequence_id]
    t = default_t if t is None else t
    return SharpnessProbe(sequence_id, t, fn(t), target)


def probe_default_gate(probe: SharpnessProbe) -> bool:
    """Whether a probe at the documented default parameter meets its tolerance."""
    _, _, default_t, expected, tol, _ = _PROBES[probe.sequence_id]
    return abs(probe.observed - expected) <= tol


def sharpness_ladder(sequence_id: str):
    """Probes along the documented parameter ladder plus the convergence verdict.

    The distance to the target must be nonincreasing along the ladder; the
    distortion upper sequence must additionally increase and stay below
    2 + 1e-9.
    """
    fn, target, _, _, _, ladder = _PROBES[sequence_id]
    probes = [sharpness_probe(sequence_id, t) for t in ladder]
    diffs = [abs(p.observed - p.target) for p in probes]
    ok = all(diffs[i + 1] <= diffs[i] + 1e-12 for i in range(len(diffs) - 1))
    if sequence_id == "moeb-upper":
        obs = [p.observed for p in probes]
        ok = ok and all(obs[i + 1] >= obs[i] for i in range(len(obs) - 1))
        ok = ok and all(o <= 2.0 + 1e-9 for o in obs)
    return probes, ok
