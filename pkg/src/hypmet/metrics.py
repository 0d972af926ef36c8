"""The four hyperbolic-type metrics: rho, j, ttau and tau.

* ``rho`` — the hyperbolic metric of the unit ball / upper half space,
* ``j_metric`` — the distance ratio metric log(1 + |x-y|/min d),
* ``ttau`` — the scale-invariant Cassinian metric
  log(1 + sup_p |x-y|/sqrt(|x-p||y-p|)), with closed forms on the special
  configurations and the numeric solver elsewhere,
* ``tau`` — the Moebius-invariant Cassinian metric with the double boundary
  supremum.

Closed-form dispatch recognizes its configuration within 1e-12 relative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels, solver
from .domains import BoundaryCloud, HalfSpace, Polygon2D, UnitBall, contains, dist_to_boundary
from .errors import OutsideDomainError, PreconditionError
from .geometry import INFINITY, as_point, chordal_dist

_TOL = 1e-12


class Method(Enum):
    CLOSED_FORM = "ClosedForm"
    NUMERIC = "Numeric"
    ORACLE = "Oracle"


@dataclass
class MetricValue:
    value: float
    method: Method
    extremal: tuple | None = None


def _check_pair(D, x, y):
    x = as_point(x, getattr(D, "dim", None))
    y = as_point(y, getattr(D, "dim", None))
    for p in (x, y):
        if not contains(D, p):
            raise OutsideDomainError(f"point {p.tolist()} is not inside the domain")
    return x, y


# ---------------------------------------------------------------------------
# hyperbolic metric


def rho(D, x, y) -> MetricValue:
    """Hyperbolic metric of the unit ball or the upper half space.

    Ball: 2 arsinh(|x-y| / sqrt((1-|x|^2)(1-|y|^2))).
    Half space: arcosh(1 + |x-y|^2/(2 x_n y_n)), evaluated in the stable
    arsinh form 2 arsinh(|x-y| / (2 sqrt(x_n y_n))).
    """
    if not isinstance(D, (UnitBall, HalfSpace)):
        raise PreconditionError("rho is defined on the ball and the half space only")
    x, y = _check_pair(D, x, y)
    s = float(np.linalg.norm(x - y))
    if s == 0.0:
        return MetricValue(0.0, Method.CLOSED_FORM)
    if isinstance(D, UnitBall):
        nx = float(np.linalg.norm(x))
        ny = float(np.linalg.norm(y))
        den = math.sqrt((1.0 - nx) * (1.0 + nx) * (1.0 - ny) * (1.0 + ny))
        return MetricValue(2.0 * math.asinh(s / den), Method.CLOSED_FORM)
    return MetricValue(2.0 * math.asinh(s / (2.0 * math.sqrt(x[-1] * y[-1]))), Method.CLOSED_FORM)


def rho_axis(kind: str, r: float, s: float) -> float:
    """Axis closed forms: ball log(((1+s)(1-r))/((1-s)(1+r))), half space log(s/r)."""
    if kind == "ball":
        if not (-1.0 < r < s < 1.0 and s > 0.0):
            raise PreconditionError("ball axis form needs -1 < r < s < 1 with s > 0")
        return math.log((1.0 + s) / (1.0 - s) * (1.0 - r) / (1.0 + r))
    if kind == "halfspace":
        if not (0.0 < r < s):
            raise PreconditionError("half-space axis form needs 0 < r < s")
        return math.log(s / r)
    raise PreconditionError("kind must be 'ball' or 'halfspace'")


def _absratio_factor(p, x, y) -> float:
    """q(p,y)/q(p,x) with the point at infinity allowed."""
    return chordal_dist(p, y) / chordal_dist(p, x)


def rho_sup_absratio(D, x, y, budget: int = 2048) -> MetricValue:
    """rho as the boundary supremum of log |u,x,y,v|.

    The absolute-ratio kernel splits into independent factors in u and v, so
    each factor is maximized separately over the boundary (with ∞ as an
    extra candidate for the half space).  Cross-validates ``rho``.
    """
    if not isinstance(D, (UnitBall, HalfSpace)):
        raise PreconditionError("the absolute-ratio supremum needs the ball or the half space")
    x, y = _check_pair(D, x, y)
    if np.array_equal(x, y):
        return MetricValue(0.0, Method.NUMERIC)

    if isinstance(D, UnitBall):
        if D.dim == 2:
            x2, y2 = x, y
            emb = lambda p: p
        else:
            x2, y2, u_ax, v_ax = solver.reduce_ball_pair(x, y)
            emb = lambda p: p[0] * u_ax + p[1] * v_ax
        point_of = lambda t: np.array([math.cos(2 * math.pi * t), math.sin(2 * math.pi * t)])
        extra = []
    else:
        if D.dim == 2:
            x2, y2 = x, y
            emb = lambda p: p
        else:
            x2, y2, base, hdir = solver.reduce_half_pair(x, y)

            def emb(p):
                w = np.zeros(D.dim)
                w[:-1] = base + p[0] * hdir
                return w

        T = 10.0 * (float(np.linalg.norm(x2)) + float(np.linalg.norm(y2)) + 1.0)
        point_of = lambda t: np.array([T * (2.0 * t - 1.0), 0.0])
        extra = [INFINITY]

    def best_factor(num_pt, den_pt):
        us = np.arange(budget) / budget
        vals = [_absratio_factor(point_of(t), den_pt, num_pt) for t in us]
        k = int(np.argmax(vals))
        du = 1.0 / budget
        f = lambda t: _absratio_factor(point_of(t), den_pt, num_pt)
        t1, v1 = kernels.golden_maximize(f, us[k] - du, us[k] + du)
        cands = [(v1, point_of(t1)), (vals[k], point_of(us[k]))]
        for e in extra:
            cands.append((_absratio_factor(e, den_pt, num_pt), e))
        cands.sort(key=lambda c: -c[0])
        return cands

    # factor in u: |u-y|/|u-x|; factor in v: |v-x|/|v-y|
    fu = best_factor(y, x)
    fv = best_factor(x, y)
    u_best, v_best = fu[0], fv[0]
    from .geometry import is_infinity

    if (is_infinity(u_best[1]) and is_infinity(v_best[1])) or (
        not is_infinity(u_best[1]) and not is_infinity(v_best[1])
        and np.linalg.norm(u_best[1] - v_best[1]) < 1e-14
    ):
        alt1 = u_best[0] * fv[1][0]
        alt2 = fu[1][0] * v_best[0]
        if alt1 >= alt2:
            v_best = fv[1]
        else:
            u_best = fu[1]
    val = math.log(u_best[0] * v_best[0])
    wit = tuple(p if is_infinity(p) else emb(p) for p in (u_best[1], v_best[1]))
    return MetricValue(val, Method.NUMERIC, extremal=wit)


# ---------------------------------------------------------------------------
# distance ratio metric


def j_metric(D, x, y) -> MetricValue:
    """log(1 + |x-y| / min(d(x, boundary), d(y, boundary)))."""
    x, y = _check_pair(D, x, y)
    s = float(np.linalg.norm(x - y))
    if s == 0.0:
        return MetricValue(0.0, Method.CLOSED_FORM)
    dmin = min(dist_to_boundary(D, x), dist_to_boundary(D, y))
    return MetricValue(math.log1p(s / dmin), Method.CLOSED_FORM)


# ---------------------------------------------------------------------------
# scale-invariant Cassinian metric: closed forms


def ttau_ball_equal_norm(x, y) -> float:
    """Exact disk formula for |x| = |y|, both nonzero.

    Interior-minimum case when |x+y| <= 4|x|^2/(1+|x|^2), clamp case
    otherwise; at the case boundary both branches must agree within 1e-9
    and the first is returned.
    """
    x = as_point(x, 2)
    y = as_point(y, 2)
    nx = float(np.linalg.norm(x))
    ny = float(np.linalg.norm(y))
    if nx == 0.0 or ny == 0.0 or abs(nx - ny) > _TOL * max(nx, ny):
        raise PreconditionError("equal-norm form needs |x| = |y| > 0")
    s = float(np.linalg.norm(x + y))
    d = float(np.linalg.norm(x - y))
    r2 = nx * ny  # symmetric in (x, y); equals |x|^2 within the tolerance
    thresh = 4.0 * r2 / (1.0 + r2)
    b1 = math.log1p(math.sqrt(2.0 * math.sqrt(r2) * d / (1.0 - r2)))
    b2 = math.log1p(d / math.sqrt(1.0 + r2 - s)) if 1.0 + r2 - s > 0.0 else math.inf
    if abs(s - thresh) <= _TOL * max(s, 1.0):
        if not (abs(b1 - b2) <= 1e-9 * max(b1, 1.0)):
            raise AssertionError("branch mismatch at the case boundary")
        return b1
    return b1 if s <= thresh else b2


def ttau_ball_collinear(x, y) -> float:
    """Exact disk formula for x = t y with real t != 0 and |x| <= |y|."""
    x = as_point(x, 2)
    y = as_point(y, 2)
    nx = float(np.linalg.norm(x))
    ny = float(np.linalg.norm(y))
    if nx > ny:
        x, y, nx, ny = y, x, ny, nx
    if nx == 0.0:
        raise PreconditionError("collinear form needs t != 0; use the origin formula")
    cross = abs(x[0] * y[1] - x[1] * y[0])
    if cross > _TOL * max(nx * ny, 1.0):
        raise PreconditionError("points are not collinear with the origin")
    t = float(x @ y)
    s = float(np.linalg.norm(x - y))
    if t > 0.0:
        return math.log1p(s / math.sqrt((1.0 - nx) * (1.0 - ny)))
    return math.log1p(s / math.sqrt((1.0 + nx) * (1.0 - ny)))


def ttau_ball_origin(x) -> float:
    """Exact formula for the pair (0, x): log(1 + |x|/sqrt(1-|x|))."""
    x = np.asarray(x, dtype=float)
    nx = float(np.linalg.norm(x))
    if nx >= 1.0:
        raise OutsideDomainError("the point must lie inside the unit ball")
    return math.log1p(nx / math.sqrt(1.0 - nx))


def ttau_halfplane_equal_height(x, y) -> float:
    """Exact half-plane formula for equal boundary distances d.

    log(1 + sqrt(|x-y|/d)) when |x-y| > 2d, else
    log(1 + 2|x-y|/sqrt(4 d^2 + |x-y|^2)).
    """
    x = as_point(x, 2)
    y = as_point(y, 2)
    if abs(x[1] - y[1]) > _TOL * max(x[1], y[1], 1.0):
        raise PreconditionError("equal-height form needs equal heights")
    d = 0.5 * float(x[1] + y[1])
    s = float(np.linalg.norm(x - y))
    if s > 2.0 * d:
        return math.log1p(math.sqrt(s / d))
    return math.log1p(2.0 * s / math.sqrt(4.0 * d * d + s * s))


def ttau_halfplane_vertical(x, y) -> float:
    """Exact half-plane formula when y - x is orthogonal to the boundary."""
    x = as_point(x, 2)
    y = as_point(y, 2)
    if abs(x[0] - y[0]) > _TOL * max(abs(x[0]), abs(y[0]), 1.0):
        raise PreconditionError("vertical form needs equal horizontal coordinates")
    s = abs(float(x[1] - y[1]))
    return math.log1p(s / math.sqrt(x[1] * y[1]))


# ---------------------------------------------------------------------------
# scale-invariant Cassinian metric: dispatcher


def ttau(D, x, y, method: str = "auto", oracle_samples: int = 100_000) -> MetricValue:
    """Scale-invariant Cassinian metric log(1 + |x-y|/sqrt(inf |x-p||y-p|)).

    ``method``: "auto" dispatches to a closed form when the configuration
    matches one (within 1e-12 relative) and to the numeric solver otherwise;
    "numeric" forces the solver; "oracle" uses the brute-force sweep;
    "closed" requires a closed form and raises if none applies.
    """
    x, y = _check_pair(D, x, y)
    if np.array_equal(x, y):
        return MetricValue(0.0, Method.CLOSED_FORM)

    if method == "oracle":
        ext = solver.oracle_min_product(D, x, y, oracle_samples)
        s = float(np.linalg.norm(x - y))
        return MetricValue(math.log1p(s / math.sqrt(ext.value)), Method.ORACLE, extremal=(ext.argmin,))

    if method == "auto":
        closed = _ttau_closed(D, x, y)
        if closed is not None:
            return closed
    elif method == "closed":
        closed = _ttau_closed(D, x, y)
        if closed is None:
            raise PreconditionError("no closed form applies to this configuration")
        return closed
    elif method != "numeric":
        raise PreconditionError("method must be auto|closed|numeric|oracle")

    ext = solver.min_product(D, x, y)
    s = float(np.linalg.norm(x - y))
    return MetricValue(math.log1p(s / math.sqrt(ext.value)), Method.NUMERIC, extremal=(ext.argmin,))


def _ttau_closed(D, x, y) -> MetricValue | None:
    if isinstance(D, UnitBall):
        nx = float(np.linalg.norm(x))
        ny = float(np.linalg.norm(y))
        if D.dim == 2:
            x2, y2 = x, y
            emb = lambda p: p
        else:
            x2, y2, u_ax, v_ax = solver.reduce_ball_pair(x, y)
            emb = lambda p: p[0] * u_ax + p[1] * v_ax
        if nx == 0.0 or ny == 0.0:
            z = y2 if nx == 0.0 else x2
            wit = emb(z / np.linalg.norm(z))
            return MetricValue(ttau_ball_origin(z), Method.CLOSED_FORM, extremal=(wit,))
        cross = abs(x2[0] * y2[1] - x2[1] * y2[0])
        if cross <= _TOL * max(nx * ny, 1.0):
            lo, hi = (x2, y2) if nx <= ny else (y2, x2)
            wit = emb(hi / np.linalg.norm(hi))
            return MetricValue(ttau_ball_collinear(lo, hi), Method.CLOSED_FORM, extremal=(wit,))
        if abs(nx - ny) <= _TOL * max(nx, ny):
            ext = solver.min_product_circle(x2, y2)
            return MetricValue(ttau_ball_equal_norm(x2, y2), Method.CLOSED_FORM, extremal=(emb(ext.argmin),))
        return None
    if isinstance(D, HalfSpace):
        if D.dim == 2:
            x2, y2 = x, y
            emb = lambda p: p
        else:
            x2, y2, base, hdir = solver.reduce_half_pair(x, y)

            def emb(p):
                w = np.zeros(D.dim)
                w[:-1] = base + p[0] * hdir
                return w

        scale = max(abs(x2[0]), abs(y2[0]), x2[1], y2[1], 1.0)
        if abs(x2[0] - y2[0]) <= _TOL * scale:
            wit = emb(np.array([x2[0], 0.0]))
            return MetricValue(ttau_halfplane_vertical(x2, y2), Method.CLOSED_FORM, extremal=(wit,))
        if abs(x2[1] - y2[1]) <= _TOL * scale:
            ext = solver.min_product_line(x2, y2)
            return MetricValue(ttau_halfplane_equal_height(x2, y2), Method.CLOSED_FORM, extremal=(emb(ext.argmin),))
        return None
    return None


# ---------------------------------------------------------------------------
# two-sided bounds and the rotation comparison pairs


def extremal_rotations(x, y, frame: str):
    """The comparison pairs (x', y') and (x'', y'') from rotating the segment.

    Ball frame: the segment is rotated onto the direction of x+y (primed,
    collinear pair) and orthogonally to it (double-primed, equal-norm pair);
    x + y = 0 falls back to the first axis.  Half-plane frame: onto the
    vertical and the horizontal directions.
    """
    x = as_point(x, 2)
    y = as_point(y, 2)
    mid = 0.5 * (x + y)
    half = 0.5 * float(np.linalg.norm(x - y))
    if frame == "ball":
        s = x + y
        ns = float(np.linalg.norm(s))
        xi = s / ns if ns > 0 else np.array([1.0, 0.0])
        zeta = np.array([-xi[1], xi[0]])
    elif frame == "halfplane":
        xi = np.array([0.0, 1.0])
        zeta = np.array([1.0, 0.0])
    else:
        raise PreconditionError("frame must be 'ball' or 'halfplane'")
    xp = mid - half * xi
    yp = mid + half * xi
    xpp = mid - half * zeta
    ypp = mid + half * zeta
    return xp, yp, xpp, ypp


def ttau_bounds_ball(x, y):
    """Two-sided disk bounds from the rotated comparison pairs.

    Returns (lower, upper); the upper bound exists only when
    |x+y| + |x-y| < 2 and is None otherwise.
    """
    x = as_point(x, 2)
    y = as_point(y, 2)
    s = float(np.linalg.norm(x - y))
    t = float(np.linalg.norm(x + y))
    if s == 0.0:
        return 0.0, (0.0 if t < 2.0 else None)
    if t * (1.0 + 4.0 / (t * t + s * s)) <= 4.0:
        lower = math.log1p(2.0 * math.sqrt(s * math.sqrt(t * t + s * s) / (4.0 - t * t - s * s)))
    else:
        lower = math.log1p(2.0 * s / math.sqrt((2.0 - t) ** 2 + s * s))
    upper = None
    if t + s < 2.0:
        upper = math.log1p(2.0 * s / math.sqrt((2.0 - t) ** 2 - s * s))
    return lower, upper


def ttau_bounds_halfplane(x, y):
    """Two-sided half-plane bounds via the height of the midpoint.

    Returns (lower, upper); the upper bound exists only when |x-y| < 2d.
    """
    x = as_point(x, 2)
    y = as_point(y, 2)
    if x[1] <= 0 or y[1] <= 0:
        raise OutsideDomainError("both points must lie in the upper half plane")
    s = float(np.linalg.norm(x - y))
    d = 0.5 * float(x[1] + y[1])
    if s == 0.0:
        return 0.0, 0.0
    if s > 2.0 * d:
        lower = math.log1p(math.sqrt(s / d))
    else:
        lower = math.log1p(2.0 * s / math.sqrt(4.0 * d * d + s * s))
    upper = None
    if s < 2.0 * d:
        upper = math.log1p(2.0 * s / math.sqrt(4.0 * d * d - s * s))
    return lower, upper


# ---------------------------------------------------------------------------
# Moebius-invariant Cassinian metric


def _image_setup(D, f, x, y):
    from .domains import boundary_samples
    from .moebius import apply

    x, y = _check_pair(D, x, y)
    extent = None
    if isinstance(D, HalfSpace):
        extent = 10.0 * (float(np.linalg.norm(x)) + float(np.linalg.norm(y)) + 1.0)
    fx = apply(f, x)
    fy = apply(f, y)
    from .geometry import is_infinity

    if is_infinity(fx) or is_infinity(fy):
        raise PreconditionError("a point maps to infinity; the image metric is undefined")

    def point_of(u):
        from .domains import boundary_point

        return apply(f, boundary_point(D, u % 1.0, extent))

    def samples(m):
        from .moebius import apply_batch

        return apply_batch(f, boundary_samples(D, m, extent))

    return x, y, fx, fy, point_of, samples


def _cyclic_local_minima(vals: np.ndarray, k_max: int) -> np.ndarray:
    prev = np.roll(vals, 1)
    nxt = np.roll(vals, -1)
    idx = np.where((vals <= prev) & (vals <= nxt))[0]
    if idx.size > k_max:
        idx = idx[np.argsort(vals[idx])[:k_max]]
    return idx


def ttau_image(D, f, x, y, samples: int = 4096) -> MetricValue:
    """Scale-invariant Cassinian metric on the Moebius image domain f(D).

    Evaluated at (f(x), f(y)) by pushing boundary samples of D through f and
    refining every candidate basin of the distance product in the preimage
    parameter.
    """
    _, _, fx, fy, point_of, sample_fn = _image_setup(D, f, x, y)
    P = sample_fn(samples)
    g = np.einsum("ij,ij->i", P - fx, P - fx) * np.einsum("ij,ij->i", P - fy, P - fy)
    du = 1.0 / samples

    def prod_sq(u):
        p = point_of(u)
        return float(((p - fx) @ (p - fx)) * ((p - fy) @ (p - fy)))

    best = float(np.min(g))
    for k in _cyclic_local_minima(g, 6):
        _, gm = kernels.golden_minimize(prod_sq, k * du - du, k * du + du)
        best = min(best, gm)
    s = float(np.linalg.norm(fx - fy))
    return MetricValue(math.log1p(s / best**0.25), Method.NUMERIC)


def j_metric_image(D, f, x, y, samples: int = 4096) -> MetricValue:
    """Distance ratio metric on f(D) via pushed boundary samples with refinement."""
    _, _, fx, fy, point_of, sample_fn = _image_setup(D, f, x, y)
    P = sample_fn(samples)
    du = 1.0 / samples
    dmin = math.inf
    for z in (fx, fy):
        d2 = np.einsum("ij,ij->i", P - z, P - z)

        def dist_sq(u, z=z):
            p = point_of(u)
            return float((p - z) @ (p - z))

        best = float(np.min(d2))
        for k in _cyclic_local_minima(d2, 4):
            _, gm = kernels.golden_minimize(dist_sq, k * du - du, k * du + du)
            best = min(best, gm)
        dmin = min(dmin, math.sqrt(best))
    s = float(np.linalg.norm(fx - fy))
    return MetricValue(math.log1p(s / dmin), Method.NUMERIC)


def tau_image(D, f, x, y, budget: int = 512) -> MetricValue:
    """Moebius-invariant Cassinian metric on f(D) via pushed boundary pairs."""
    _, _, fx, fy, point_of, sample_fn = _image_setup(D, f, x, y)
    P = sample_fn(budget)
    val, i, j = kernels.pair_sup_scan(P, fx, fy)
    du = 1.0 / budget
    ref, _, _ = solver._refine_pair(point_of, fx, fy, i * du, j * du, du)
    return MetricValue(math.log1p(max(float(val), ref)), Method.NUMERIC)


def tau(D, x, y, budget: int = 512) -> MetricValue:
    """log(1 + sup over boundary pairs of |x-y||p-q|/sqrt(|x-p||y-q||x-q||y-p|))."""
    if isinstance(D, BoundaryCloud) and D.points.shape[0] < 2:
        raise PreconditionError("tau needs at least two boundary points")
    x, y = _check_pair(D, x, y)
    if np.array_equal(x, y):
        return MetricValue(0.0, Method.NUMERIC)
    sup = solver.sup_pair_product(D, x, y, budget)
    return MetricValue(math.log1p(sup.value), Method.NUMERIC, extremal=sup.argmax)
