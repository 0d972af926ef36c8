"""Domain variants with boundary access, plus Cassinian oval geometry.

Supported domains: the unit ball B^n, the upper half space H^n (x_n > 0),
simple polygons in the plane, and finite boundary sample clouds.  The
Cassinian oval |z - f1||z - f2| = b^2 is traced in its focal frame from the
polar form r^2 = a^2 cos 2t ± sqrt(b^4 - a^4 sin^2 2t).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import OutsideDomainError, PreconditionError
from .geometry import as_point


@dataclass(frozen=True, eq=False)
class UnitBall:
    dim: int = 2


@dataclass(frozen=True, eq=False)
class HalfSpace:
    """Upper half space: points with positive last coordinate."""

    dim: int = 2


class Polygon2D:
    """Simple closed polygon, stored counterclockwise."""

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise PreconditionError("a polygon needs at least 3 planar vertices")
        if not np.all(np.isfinite(v)):
            raise PreconditionError("polygon vertices must be finite")
        if _polygon_area(v) < 0.0:
            v = v[::-1].copy()
        if _self_intersects(v):
            raise PreconditionError("polygon is not simple (edges intersect)")
        self.vertices = v
        self.dim = 2
        seg = np.roll(v, -1, axis=0) - v
        lengths = np.linalg.norm(seg, axis=1)
        if np.any(lengths == 0.0):
            raise PreconditionError("polygon has a zero-length edge")
        self._edge_vec = seg
        self._edge_len = lengths
        self._cum = np.concatenate([[0.0], np.cumsum(lengths)])
        self.perimeter = float(self._cum[-1])


class BoundaryCloud:
    """Finite list of boundary samples; the universal fallback domain."""

    def __init__(self, points):
        p = np.asarray(points, dtype=float)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 2:
            raise PreconditionError("a boundary cloud needs at least one point of R^n, n >= 2")
        self.points = p
        self.dim = p.shape[1]


def _polygon_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _segments_properly_intersect(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def _self_intersects(v: np.ndarray) -> bool:
    n = v.shape[0]
    for i in range(n):
        a1, a2 = v[i], v[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            if _segments_properly_intersect(a1, a2, v[j], v[(j + 1) % n]):
                return True
    return False


def contains(D, x) -> bool:
    """Strict interior membership; clouds cannot decide and report True."""
    x = np.asarray(x, dtype=float)
    if isinstance(D, UnitBall):
        return x.size == D.dim and float(np.linalg.norm(x)) < 1.0
    if isinstance(D, HalfSpace):
        return x.size == D.dim and float(x[-1]) > 0.0
    if isinstance(D, Polygon2D):
        if x.size != 2 or dist_to_boundary_unchecked(D, x) == 0.0:
            return False
        return _winding_number(D.vertices, x) != 0
    if isinstance(D, BoundaryCloud):
        return True
    raise PreconditionError(f"unknown domain {D!r}")


def _winding_number(v: np.ndarray, x) -> int:
    wn = 0
    n = v.shape[0]
    for i in range(n):
        a = v[i]
        b = v[(i + 1) % n]
        cross = (b[0] - a[0]) * (x[1] - a[1]) - (x[0] - a[0]) * (b[1] - a[1])
        if a[1] <= x[1]:
            if b[1] > x[1] and cross > 0:
                wn += 1
        elif b[1] <= x[1] and cross < 0:
            wn -= 1
    return wn


def _point_segment_dist(x, a, b) -> float:
    e = b - a
    ee = float(e @ e)
    if ee == 0.0:
        return float(np.linalg.norm(x - a))
    t = float((x - a) @ e) / ee
    t = min(1.0, max(0.0, t))
    return float(np.linalg.norm(x - (a + t * e)))


def dist_to_boundary_unchecked(D, x) -> float:
    x = np.asarray(x, dtype=float)
    if isinstance(D, UnitBall):
        return abs(1.0 - float(np.linalg.norm(x)))
    if isinstance(D, HalfSpace):
        return abs(float(x[-1]))
    if isinstance(D, Polygon2D):
        v = D.vertices
        n = v.shape[0]
        return min(_point_segment_dist(x, v[i], v[(i + 1) % n]) for i in range(n))
    if isinstance(D, BoundaryCloud):
        return float(np.min(np.linalg.norm(D.points - x[None, :], axis=1)))
    raise PreconditionError(f"unknown domain {D!r}")


def dist_to_boundary(D, x) -> float:
    """Euclidean distance from an interior point to the boundary of D."""
    x = as_point(x, getattr(D, "dim", None))
    if not contains(D, x):
        raise OutsideDomainError(f"point {x.tolist()} is not inside the domain")
    return dist_to_boundary_unchecked(D, x)


def signed_boundary_dist(D, x) -> float:
    """Distance to the boundary, positive inside, negative outside."""
    x = np.asarray(x, dtype=float)
    if isinstance(D, UnitBall):
        return 1.0 - float(np.linalg.norm(x))
    if isinstance(D, HalfSpace):
        return float(x[-1])
    if isinstance(D, Polygon2D):
        d = dist_to_boundary_unchecked(D, x)
        return d if _winding_number(D.vertices, x) != 0 else -d
    raise PreconditionError("signed distance needs a ball, half space or polygon")


def boundary_point(D, u, extent: float | None = None) -> np.ndarray:
    """Boundary point for the natural parameter u in [0, 1).

    Ball (2-D): angle 2*pi*u.  Half plane: coordinate t = extent*(2u - 1) on
    the boundary line.  Polygon: arc length u * perimeter.
    """
    if isinstance(D, UnitBall) and D.dim == 2:
        t = 2.0 * math.pi * u
        return np.array([math.cos(t), math.sin(t)])
    if isinstance(D, HalfSpace) and D.dim == 2:
        if extent is None:
            raise PreconditionError("half-plane boundary parameter needs an extent")
        return np.array([extent * (2.0 * u - 1.0), 0.0])
    if isinstance(D, Polygon2D):
        s = (u % 1.0) * D.perimeter
        i = int(np.searchsorted(D._cum, s, side="right") - 1)
        i = min(i, len(D._edge_len) - 1)
        frac = (s - D._cum[i]) / D._edge_len[i]
        return D.vertices[i] + frac * D._edge_vec[i]
    raise PreconditionError("no natural boundary parameter for this domain")


def boundary_samples(D, m: int, extent: float | None = None) -> np.ndarray:
    """m boundary points uniform in the natural parameter."""
    u = np.arange(m) / m
    if isinstance(D, UnitBall) and D.dim == 2:
        t = 2.0 * np.pi * u
        return np.stack([np.cos(t), np.sin(t)], axis=1)
    if isinstance(D, HalfSpace) and D.dim == 2:
        if extent is None:
            raise PreconditionError("half-plane boundary samples need an extent")
        return np.stack([extent * (2.0 * u - 1.0), np.zeros(m)], axis=1)
    if isinstance(D, Polygon2D):
        return np.stack([boundary_point(D, ui) for ui in u])
    if isinstance(D, BoundaryCloud):
        return D.points
    raise PreconditionError("cannot sample the boundary of this domain")


# ---------------------------------------------------------------------------
# Cassinian ovals


class OvalClass(Enum):
    TWO_LOOPS = "TwoLoops"
    LEMNISCATE = "Lemniscate"
    PEANUT = "Peanut"
    CONVEX = "Convex"
    CIRCLE = "Circle"


class CassinianOval:
    """Level set |z - focus1| |z - focus2| = b^2 in the plane of the foci."""

    def __init__(self, focus1, focus2, b: float):
        f1 = np.asarray(focus1, dtype=float)
        f2 = np.asarray(focus2, dtype=float)
        if not (b > 0.0 and np.isfinite(b)):
            raise PreconditionError("oval level b must be a positive real")
        self.focus1 = f1
        self.focus2 = f2
        self.b = float(b)
        self.a = 0.5 * float(np.linalg.norm(f2 - f1))
        self.midpoint = 0.5 * (f1 + f2)

    @property
    def eccentricity(self) -> float:
        return math.inf if self.a == 0.0 else self.b / self.a


def oval_classify(C: CassinianOval) -> OvalClass:
    """Shape class from e = b/a: two loops, lemniscate, peanut, convex or circle."""
    if C.a == 0.0:
        return OvalClass.CIRCLE
    e = C.b / C.a
    if abs(e - 1.0) <= 1e-12:
        return OvalClass.LEMNISCATE
    if e < 1.0:
        return OvalClass.TWO_LOOPS
    if e < math.sqrt(2.0):
        return OvalClass.PEANUT
    return OvalClass.CONVEX


def oval_max_radius(C: CassinianOval) -> float:
    """Largest distance from the focal midpoint to the oval: sqrt(a^2 + b^2)."""
    return math.hypot(C.a, C.b)


def oval_trace_full(C: CassinianOval, m: int):
    """Trace the oval in the plane (2-D foci only).

    Returns (thetas, branches, points): angles in the focal frame, branch +1
    or -1 for the sign in the polar form, and the points in world
    coordinates.  Angles whose branch has no real radius are dropped.
    """
    if C.focus1.size != 2:
        raise PreconditionError("oval tracing is implemented for the plane only")
    if m < 8:
        raise PreconditionError("at least 8 trace samples are required")
    if C.a == 0.0:
        raise PreconditionError("coincident foci: the oval is the circle |z - f| = b")
    a, b = C.a, C.b
    u = (C.focus2 - C.focus1) / (2.0 * a)
    v = np.array([-u[1], u[0]])
    t = np.arange(m) * (2.0 * np.pi / m)
    disc = b**4 - a**4 * np.sin(2.0 * t) ** 2
    thetas, branches, pts = [], [], []
    for branch in (1.0, -1.0):
        ok = disc >= 0.0
        r2 = a * a * np.cos(2.0 * t[ok]) + branch * np.sqrt(disc[ok])
        keep = r2 >= -1e-12 * b * b
        r = np.sqrt(np.maximum(r2[keep], 0.0))
        tk = t[ok][keep]
        p = C.midpoint[None, :] + r[:, None] * (np.cos(tk)[:, None] * u + np.sin(tk)[:, None] * v)
        thetas.append(tk)
        branches.append(np.full(tk.size, branch))
        pts.append(p)
    return np.concatenate(thetas), np.concatenate(branches), np.concatenate(pts)


def oval_trace(C: CassinianOval, m: int) -> np.ndarray:
    """Points on the oval (see oval_trace_full)."""
    return oval_trace_full(C, m)[2]


def oval_residuals(C: CassinianOval, points: np.ndarray) -> np.ndarray:
    """Relative level-set residuals |z-f1||z-f2|/b^2 - 1 of traced points."""
    d1 = np.linalg.norm(points - C.focus1[None, :], axis=1)
    d2 = np.linalg.norm(points - C.focus2[None, :], axis=1)
    return d1 * d2 / (C.b * C.b) - 1.0


def boundary_inf_product(D, x, y):
    """Infimum over the boundary of |x-p||y-p| together with its argmin.

    This is the kernel quantity behind the scale-invariant Cassinian metric;
    the minimization is delegated to the solver module per domain variant.
    """
    from . import solver

    return solver.min_product(D, x, y)


def maximal_oval(D, x, y):
    """Largest Cassinian oval with foci x, y inside the closure of D.

    Returns (oval, tangent_point); the level satisfies b^2 = inf over the
    boundary of |x-p||y-p| and the tangent point attains it.
    """
    x = as_point(x, getattr(D, "dim", None))
    y = as_point(y, getattr(D, "dim", None))
    if np.array_equal(x, y):
        raise PreconditionError("coincident foci give a degenerate oval")
    ext = boundary_inf_product(D, x, y)
    oval = CassinianOval(x, y, math.sqrt(ext.value))
    return oval, ext.argmin


def polygon_to_json(P: Polygon2D) -> dict:
    return {"vertices": [[float(a), float(b)] for a, b in P.vertices]}


def polygon_from_json(data: dict) -> Polygon2D:
    if "vertices" not in data:
        raise PreconditionError('polygon JSON needs a "vertices" key')
    return Polygon2D(data["vertices"])


def load_polygon(path: str) -> Polygon2D:
    with open(path) as fh:
        return polygon_from_json(json.load(fh))


def load_cloud(path: str) -> BoundaryCloud:
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("points")
    return BoundaryCloud(data)
