"""Minimization of the boundary distance product g(p) = |x-p||y-p|.

Closed forms cover the symmetric configurations (equal-norm pairs on the
disk, equal-height and vertical pairs on the half plane); everything else
goes through the numeric kernels.  A brute-force sweep oracle, used only by
tests, provides ground truth.

Ties between symmetric minimizers are broken toward the candidate nearest
to x, then lexicographically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .domains import (
    BoundaryCloud,
    HalfSpace,
    Polygon2D,
    UnitBall,
    boundary_point,
    contains,
)
from .errors import OutsideDomainError, PreconditionError
from .geometry import INFINITY, as_point

_REL_TOL = 1e-12


@dataclass
class BoundaryExtremum:
    value: float
    argmin: np.ndarray
    attained: bool = True


@dataclass
class PairSupremum:
    """Result of the boundary-pair supremum behind the Moebius-invariant metric."""

    value: float
    argmax: tuple = field(default=None)
    attained: bool = True


def _require_inside(D, x) -> np.ndarray:
    x = as_point(x, getattr(D, "dim", None))
    if not contains(D, x):
        raise OutsideDomainError(f"point {x.tolist()} is not inside the domain")
    return x


def _lex_less(a, b) -> bool:
    for s, t in zip(a, b):
        if s != t:
            return s < t
    return False


def plane_basis(x: np.ndarray, y: np.ndarray):
    """Orthonormal basis (u, v) of a 2-plane through the origin containing x and y."""
    n = x.size
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    u = x / nx if nx > 0 else (y / ny if ny > 0 else None)
    if u is None:
        u = np.zeros(n)
        u[0] = 1.0
    w = y - (y @ u) * u
    nw = np.linalg.norm(w)
    if nw > 1e-12 * max(ny, 1.0):
        v = w / nw
    else:
        k = int(np.argmin(np.abs(u)))
        ek = np.zeros(n)
        ek[k] = 1.0
        w = ek - (ek @ u) * u
        v = w / np.linalg.norm(w)
    return u, v


def reduce_ball_pair(x: np.ndarray, y: np.ndarray):
    """Coordinates of x, y in the 2-plane through them and the ball center."""
    u, v = plane_basis(x, y)
    x2 = np.array([x @ u, x @ v])
    y2 = np.array([y @ u, y @ v])
    return x2, y2, u, v


def reduce_half_pair(x: np.ndarray, y: np.ndarray):
    """Half-plane frame containing x, y and the boundary normal.

    Returns (x2, y2, base, hdir): 2-D coordinates (horizontal offset, height),
    the base point of the frame on the boundary hyperplane, and the
    horizontal direction (length n-1 vector).
    """
    hx, hy = x[:-1], y[:-1]
    h = hy - hx
    nh = float(np.linalg.norm(h))
    if nh <= 1e-12 * max(1.0, float(np.linalg.norm(hx)), float(np.linalg.norm(hy))):
        hdir = np.zeros(x.size - 1)
        hdir[0] = 1.0
        nh = 0.0
    else:
        hdir = h / nh
    x2 = np.array([0.0, x[-1]])
    y2 = np.array([nh, y[-1]])
    return x2, y2, hx.copy(), hdir


def _embed_circle_arg(theta: float, u, v) -> np.ndarray:
    return math.cos(theta) * u + math.sin(theta) * v


# ---------------------------------------------------------------------------
# unit circle


def min_product_circle(x, y) -> BoundaryExtremum:
    """Minimum of |x-p||y-p| over the unit circle, for x, y in the open disk.

    Equal-norm pairs use the exact two-case formula (interior critical point
    or the clamp at the symmetry axis); other pairs are solved numerically.
    """
    x = as_point(x, 2)
    y = as_point(y, 2)
    if np.linalg.norm(x) >= 1.0 or np.linalg.norm(y) >= 1.0:
        raise OutsideDomainError("both points must lie inside the unit disk")

    if np.array_equal(x, y):
        nx = float(np.linalg.norm(x))
        val = (1.0 - nx) ** 2
        arg = x / nx if nx > 0 else np.array([-1.0, 0.0])
        return BoundaryExtremum(val, arg)

    nx = float(np.linalg.norm(x))
    ny = float(np.linalg.norm(y))
    if abs(nx - ny) <= _REL_TOL * max(nx, ny, 1.0):
        return _circle_equal_norm(x, y)

    prods, thetas = kernels.circle_min_batch(x[None, :], y[None, :])
    theta = float(thetas[0])
    arg = np.array([math.cos(theta), math.sin(theta)])
    return BoundaryExtremum(float(prods[0]), arg)


def _circle_equal_norm(x, y) -> BoundaryExtremum:
    s = x + y
    d = x - y
    ns = float(np.linalg.norm(s))
    nd = float(np.linalg.norm(d))
    zeta = d / nd
    if ns > 0:
        xi = s / ns
    else:
        xi = np.array([zeta[1], -zeta[0]])
    x1 = 0.5 * ns
    x2 = 0.5 * nd
    r2 = x1 * x1 + x2 * x2
    t0 = 0.5 * x1 * (1.0 + 1.0 / r2)
    if t0 <= 1.0:
        value = x2 * (1.0 - r2) / math.sqrt(r2)
        arg = t0 * xi + math.sqrt(max(1.0 - t0 * t0, 0.0)) * zeta
    else:
        value = 1.0 + r2 - 2.0 * x1
        arg = xi.copy()
    return BoundaryExtremum(value, arg)


def _min_product_ball(x, y) -> BoundaryExtremum:
    if x.size == 2:
        return min_product_circle(x, y)
    x2, y2, u, v = reduce_ball_pair(x, y)
    ext = min_product_circle(x2, y2)
    arg = ext.argmin[0] * u + ext.argmin[1] * v
    return BoundaryExtremum(ext.value, arg)


# ---------------------------------------------------------------------------
# half-plane boundary line


def _line_extent(x, y) -> float:
    return 10.0 * (float(np.linalg.norm(x)) + float(np.linalg.norm(y)) + 1.0)


def min_product_line(x, y) -> BoundaryExtremum:
    """Minimum of |x-p||y-p| over the boundary line of the upper half plane.

    Vertical pairs and equal-height pairs use the exact quartic minima; for
    everything else the quartic is minimized from the closed-form roots of
    its cubic derivative.
    """
    x = as_point(x, 2)
    y = as_point(y, 2)
    if x[1] <= 0.0 or y[1] <= 0.0:
        raise OutsideDomainError("both points must lie in the upper half plane")
    scale = max(abs(x[0]), abs(y[0]), x[1], y[1], 1.0)

    if abs(x[0] - y[0]) <= _REL_TOL * scale:  # vertical pair
        return BoundaryExtremum(float(x[1] * y[1]), np.array([x[0], 0.0]))

    if abs(x[1] - y[1]) <= _REL_TOL * scale:  # equal heights
        half = 0.5 * abs(x[0] - y[0])
        d = float(x[1])
        midx = 0.5 * (x[0] + y[0])
        if half > d:
            t0 = math.sqrt(half * half - d * d)
            sgn = 1.0 if x[0] > y[0] else -1.0
            return BoundaryExtremum(2.0 * half * d, np.array([midx + sgn * t0, 0.0]))
        return BoundaryExtremum(half * half + d * d, np.array([midx, 0.0]))

    T = _line_extent(x, y)
    for _ in range(4):
        ts, qv = kernels.quartic_min_batch(
            np.array([x[0]]), np.array([x[1] ** 2]),
            np.array([y[0]]), np.array([y[1] ** 2]),
            np.array([-T]), np.array([T]),
        )
        best = math.sqrt(float(qv[0]))
        edge = min(_product_at_line(x, y, -T), _product_at_line(x, y, T))
        if edge >= 2.0 * best:
            break
        T *= 2.0
    return BoundaryExtremum(best, np.array([float(ts[0]), 0.0]))


def _product_at_line(x, y, t) -> float:
    return math.hypot(t - x[0], x[1]) * math.hypot(t - y[0], y[1])


def _min_product_half(x, y) -> BoundaryExtremum:
    if x.size == 2:
        return min_product_line(x, y)
    x2, y2, base, hdir = reduce_half_pair(x, y)
    ext = min_product_line(x2, y2)
    arg = np.zeros(x.size)
    arg[:-1] = base + ext.argmin[0] * hdir
    return BoundaryExtremum(ext.value, arg)


# ---------------------------------------------------------------------------
# segments and polygons


def min_product_segment(x, y, seg) -> BoundaryExtremum:
    """Global minimum of |x-p||y-p| for p on the closed segment."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    p0 = np.asarray(seg[0], dtype=float)
    p1 = np.asarray(seg[1], dtype=float)
    e = p1 - p0
    ee = float(e @ e)
    if ee == 0.0:
        val = float(np.linalg.norm(x - p0) * np.linalg.norm(y - p0))
        return BoundaryExtremum(val, p0.copy())
    ax = float(e @ (x - p0)) / ee
    ay = float(e @ (y - p0)) / ee
    Ax = max(float((x - p0) @ (x - p0)) / ee - ax * ax, 0.0)
    Ay = max(float((y - p0) @ (y - p0)) / ee - ay * ay, 0.0)
    ts, qv = kernels.quartic_min_batch(
        np.array([ax]), np.array([Ax]), np.array([ay]), np.array([Ay]),
        np.array([0.0]), np.array([1.0]),
    )
    t = float(ts[0])
    return BoundaryExtremum(ee * math.sqrt(float(qv[0])), p0 + t * e)


def _min_product_polygon(D: Polygon2D, x, y) -> BoundaryExtremum:
    v = D.vertices
    n = v.shape[0]
    e = D._edge_vec
    ee = D._edge_len**2
    ax = np.einsum("ij,ij->i", e, x[None, :] - v) / ee
    ay = np.einsum("ij,ij->i", e, y[None, :] - v) / ee
    Ax = np.maximum(np.einsum("ij,ij->i", x[None, :] - v, x[None, :] - v) / ee - ax * ax, 0.0)
    Ay = np.maximum(np.einsum("ij,ij->i", y[None, :] - v, y[None, :] - v) / ee - ay * ay, 0.0)
    ts, qv = kernels.quartic_min_batch(ax, Ax, ay, Ay, np.zeros(n), np.ones(n))
    vals = ee * np.sqrt(np.maximum(qv, 0.0))
    k = int(np.argmin(vals))
    return BoundaryExtremum(float(vals[k]), v[k] + ts[k] * e[k])


def min_product(D, x, y) -> BoundaryExtremum:
    """Infimum of |x-p||y-p| over the boundary of D, with its argmin."""
    x = _require_inside(D, x)
    y = _require_inside(D, y)
    if isinstance(D, UnitBall):
        ext = _min_product_ball(x, y)
    elif isinstance(D, HalfSpace):
        ext = _min_product_half(x, y)
    elif isinstance(D, Polygon2D):
        ext = _min_product_polygon(D, x, y)
    elif isinstance(D, BoundaryCloud):
        idx, prods = kernels.cloud_min_batch(D.points, x[None, :], y[None, :])
        ext = BoundaryExtremum(float(prods[0]), D.points[int(idx[0])].copy())
    else:
        raise PreconditionError(f"unknown domain {D!r}")
    assert ext.value > 0.0, "zero boundary product for interior points"
    return ext


# ---------------------------------------------------------------------------
# batched numeric paths (used by the verification suites)


def min_product_ball_batch(X, Y) -> np.ndarray:
    """Boundary product minima for rows of 2-D ball pairs (values only)."""
    prods, _ = kernels.circle_min_batch(np.asarray(X, float), np.asarray(Y, float))
    return prods


def min_product_half_batch(X, Y) -> np.ndarray:
    """Boundary product minima for rows of half-plane pairs (values only)."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    T = 10.0 * (np.linalg.norm(X, axis=1) + np.linalg.norm(Y, axis=1) + 1.0)
    _, qv = kernels.quartic_min_batch(X[:, 0], X[:, 1] ** 2, Y[:, 0], Y[:, 1] ** 2, -T, T)
    return np.sqrt(np.maximum(qv, 0.0))


# ---------------------------------------------------------------------------
# brute-force oracle (tests only)


def oracle_min_product(D, x, y, samples: int = 100_000) -> BoundaryExtremum:
    """Dense boundary sweep plus golden refinement around the best sample.

    Ground truth for tests; independent of the closed forms and of the
    bracket logic of the production path.
    """
    if samples < 1000:
        raise PreconditionError("the oracle needs at least 1000 samples")
    x = _require_inside(D, x)
    y = _require_inside(D, y)

    if isinstance(D, UnitBall) and D.dim == 2:
        t = np.arange(samples) * (2.0 * np.pi / samples)
        g = _circle_prod_sq(t, x, y)
        k = int(np.argmin(g))
        step = 2.0 * np.pi / samples
        f = lambda u: float(_circle_prod_sq(np.array([u]), x, y)[0])
        tm, gm = kernels.golden_minimize(f, (k - 1) * step, (k + 1) * step)
        return BoundaryExtremum(math.sqrt(gm), np.array([math.cos(tm), math.sin(tm)]))

    if isinstance(D, UnitBall) and D.dim == 3:
        k, g = kernels.sphere_min_scan(x, y, samples)
        return _sphere_refine(x, y, samples, k, g)

    if isinstance(D, HalfSpace) and D.dim == 2:
        T = _line_extent(x, y)
        for _ in range(6):
            ts = np.linspace(-T, T, samples)
            g = _line_prod_sq(ts, x, y)
            k = int(np.argmin(g))
            if k not in (0, samples - 1) and min(g[0], g[-1]) >= 4.0 * g[k]:
                break
            T *= 2.0
        step = ts[1] - ts[0]
        f = lambda u: float(_line_prod_sq(np.array([u]), x, y)[0])
        tm, gm = kernels.golden_minimize(f, ts[k] - step, ts[k] + step)
        return BoundaryExtremum(math.sqrt(gm), np.array([tm, 0.0]))

    if isinstance(D, HalfSpace) and D.dim == 3:
        T = _line_extent(x, y)
        m = max(int(math.sqrt(samples)), 64)
        i, j, g = kernels.plane_min_scan(x, y, T, m)
        step = 2.0 * T / (m - 1)
        u0, v0 = -T + i * step, -T + j * step
        return _plane_refine(x, y, u0, v0, step)

    if isinstance(D, Polygon2D):
        us = np.arange(samples) / samples
        P = np.stack([boundary_point(D, u) for u in us])
        g = np.einsum("ij,ij->i", P - x, P - x) * np.einsum("ij,ij->i", P - y, P - y)
        k = int(np.argmin(g))
        du = 1.0 / samples

        def f(u):
            p = boundary_point(D, u % 1.0)
            return float(((p - x) @ (p - x)) * ((p - y) @ (p - y)))

        um, gm = kernels.golden_minimize(f, us[k] - du, us[k] + du)
        return BoundaryExtremum(math.sqrt(gm), boundary_point(D, um % 1.0))

    if isinstance(D, BoundaryCloud):
        idx, prods = kernels.cloud_min_batch(D.points, x[None, :], y[None, :])
        return BoundaryExtremum(float(prods[0]), D.points[int(idx[0])].copy())

    raise PreconditionError(f"no oracle for domain {D!r}")


def _circle_prod_sq(t, x, y):
    px, py = np.cos(t), np.sin(t)
    return ((px - x[0]) ** 2 + (py - x[1]) ** 2) * ((px - y[0]) ** 2 + (py - y[1]) ** 2)


def _line_prod_sq(t, x, y):
    return ((t - x[0]) ** 2 + x[1] ** 2) * ((t - y[0]) ** 2 + y[1] ** 2)


def _sphere_refine(x, y, n, k, g0) -> BoundaryExtremum:
    z = 1.0 - (2.0 * k + 1.0) / n
    theta = math.acos(max(-1.0, min(1.0, z)))
    phi = math.fmod(k * (math.pi * (3.0 - math.sqrt(5.0))), 2.0 * math.pi)
    spacing = 2.0 * math.sqrt(math.pi / n)

    def prod_sq(th, ph):
        p = np.array([math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)])
        return float(((p - x) @ (p - x)) * ((p - y) @ (p - y)))

    best = (theta, phi, g0)
    for _ in range(3):
        th, _ = kernels.golden_minimize(lambda t: prod_sq(t, best[1]), best[0] - 2 * spacing, best[0] + 2 * spacing)
        ph, gv = kernels.golden_minimize(lambda p: prod_sq(best[0], p), best[1] - 2 * spacing, best[1] + 2 * spacing)
        cand = (th, ph, prod_sq(th, ph))
        best = min([best, cand, (best[0], ph, prod_sq(best[0], ph)), (th, best[1], prod_sq(th, best[1]))],
                   key=lambda c: c[2])
    th, ph, g = best
    arg = np.array([math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)])
    return BoundaryExtremum(math.sqrt(g), arg)


def _plane_refine(x, y, u0, v0, step) -> BoundaryExtremum:
    def prod_sq(u, v):
        p = np.array([u, v, 0.0])
        return float(((p - x) @ (p - x)) * ((p - y) @ (p - y)))

    u, v = u0, v0
    for _ in range(3):
        u, _ = kernels.golden_minimize(lambda t: prod_sq(t, v), u - step, u + step)
        v, g = kernels.golden_minimize(lambda t: prod_sq(u, t), v - step, v + step)
    return BoundaryExtremum(math.sqrt(prod_sq(u, v)), np.array([u, v, 0.0]))


# ---------------------------------------------------------------------------
# boundary-pair supremum (Moebius-invariant Cassinian kernel)


def _pair_kernel(x, y, p, q) -> float:
    num = float(np.linalg.norm(x - y) * np.linalg.norm(p - q))
    den = math.sqrt(
        float(np.linalg.norm(x - p)) * float(np.linalg.norm(y - q))
        * float(np.linalg.norm(x - q)) * float(np.linalg.norm(y - p))
    )
    return num / den


def _refine_pair(point_of, x, y, u0, v0, du, rounds=6):
    """Alternating golden maximization of the pair kernel in parameter space."""
    u, v = u0, v0
    val = _pair_kernel(x, y, point_of(u), point_of(v))
    for _ in range(rounds):
        u, _ = kernels.golden_maximize(lambda t: _pair_kernel(x, y, point_of(t), point_of(v)), u - du, u + du)
        v, new = kernels.golden_maximize(lambda t: _pair_kernel(x, y, point_of(u), point_of(t)), v - du, v + du)
        if abs(new - val) < 1e-10:
            val = new
            break
        val = new
    return val, u, v


def sup_pair_product(D, x, y, budget: int = 512) -> PairSupremum:
    """Supremum over boundary pairs of |x-y||p-q| / sqrt(|x-p||y-q||x-q||y-p|).

    Coarse pair grid (budget samples per side) followed by alternating
    golden refinement; on unbounded domains the point at infinity enters as
    an explicit candidate evaluated through its limit kernel.
    """
    x = _require_inside(D, x)
    y = _require_inside(D, y)
    if np.array_equal(x, y):
        raise PreconditionError("the pair supremum needs two distinct points")

    if isinstance(D, BoundaryCloud):
        val, i, j = kernels.pair_sup_scan(D.points, x, y)
        return PairSupremum(float(val), (D.points[i].copy(), D.points[j].copy()))

    if isinstance(D, UnitBall):
        if D.dim == 2:
            x2, y2, u_ax, v_ax = x, y, np.array([1.0, 0.0]), np.array([0.0, 1.0])
        else:
            x2, y2, u_ax, v_ax = reduce_ball_pair(x, y)
        point_of = lambda t: np.array([math.cos(2 * math.pi * t), math.sin(2 * math.pi * t)])
        P = np.stack([point_of(t) for t in np.arange(budget) / budget])
        val, i, j = kernels.pair_sup_scan(P, x2, y2)
        best = (float(val), i / budget, j / budget)
        # the antipodal pair through the product argmin dominates the
        # single-point kernel, keeping the pair supremum above it numerically
        ext = min_product_circle(x2, y2)
        t_arg = math.atan2(ext.argmin[1], ext.argmin[0]) / (2 * math.pi) % 1.0
        cand = _pair_kernel(x2, y2, ext.argmin, -ext.argmin)
        if cand > best[0]:
            best = (cand, t_arg, (t_arg + 0.5) % 1.0)
        val, u, v = _refine_pair(point_of, x2, y2, best[1], best[2], 1.0 / budget)
        if val < best[0]:
            val, u, v = best
        p2, q2 = point_of(u), point_of(v)
        emb = lambda p: p[0] * u_ax + p[1] * v_ax if D.dim > 2 else p
        return PairSupremum(float(val), (emb(p2), emb(q2)))

    if isinstance(D, HalfSpace):
        if D.dim == 2:
            x2, y2 = x, y
            base, hdir = np.zeros(1), None
        else:
            x2, y2, base, hdir = reduce_half_pair(x, y)
        T = _line_extent(x2, y2)
        point_of = lambda t: np.array([T * (2.0 * t - 1.0), 0.0])
        P = np.stack([point_of(t) for t in np.arange(budget) / budget])
        val, i, j = kernels.pair_sup_scan(P, x2, y2)
        fin_val, u, v = _refine_pair(point_of, x2, y2, i / budget, j / budget, 1.0 / budget)

        # candidates through the point at infinity: the paired |.-p| factors
        # cancel against |p-q| in the limit
        ext = min_product_line(x2, y2)
        inf_val = float(np.linalg.norm(x2 - y2)) / math.sqrt(ext.value)

        def emb(p2):
            if D.dim == 2:
                return p2
            w = np.zeros(D.dim)
            w[:-1] = base + p2[0] * hdir
            return w

        if inf_val >= fin_val:
            return PairSupremum(inf_val, (INFINITY, emb(ext.argmin)), attained=False)
        return PairSupremum(fin_val, (emb(point_of(u)), emb(point_of(v))))

    if isinstance(D, Polygon2D):
        us = np.arange(budget) / budget
        P = np.stack([boundary_point(D, t) for t in us])
        val, i, j = kernels.pair_sup_scan(P, x, y)
        best = (float(val), us[i], us[j])
        ext = _min_product_polygon(D, x, y)
        for k in range(D.vertices.shape[0]):
            cand = _pair_kernel(x, y, ext.argmin, D.vertices[k])
            if cand > best[0]:
                best = (cand, _polygon_param(D, ext.argmin), D._cum[k] / D.perimeter)
        point_of = lambda t: boundary_point(D, t % 1.0)
        val, u, v = _refine_pair(point_of, x, y, best[1], best[2], 1.0 / budget)
        if val < best[0]:
            val, u, v = best
        return PairSupremum(float(val), (point_of(u), point_of(v)))

    raise PreconditionError(f"unknown domain {D!r}")


def _polygon_param(D: Polygon2D, p: np.ndarray) -> float:
    """Arc-length parameter of the boundary point nearest to p."""
    v = D.vertices
    best, arg = np.inf, 0.0
    for i in range(v.shape[0]):
        e = D._edge_vec[i]
        t = float((p - v[i]) @ e) / float(e @ e)
        t = min(1.0, max(0.0, t))
        d = float(np.linalg.norm(p - (v[i] + t * e)))
        if d < best:
            best = d
            arg = (D._cum[i] + t * D._edge_len[i]) / D.perimeter
    return arg
