"""Points of R^n and of the Moebius space R^n ∪ {∞}: distances and the absolute ratio.

Finite points are plain float ndarrays of length n >= 2.  The point at
infinity is the module-level singleton ``INFINITY``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import PreconditionError


class _Infinity:
    """The point at infinity; compares equal only to itself."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()


def is_infinity(p) -> bool:
    return isinstance(p, _Infinity)


def as_point(p, dim: int | None = None) -> np.ndarray:
    """Validate ``p`` as a finite point of R^n (n >= 2) and return it as a float array."""
    a = np.asarray(p, dtype=float)
    if a.ndim != 1 or a.size < 2:
        raise PreconditionError(f"a point needs at least 2 coordinates, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise PreconditionError("point coordinates must be finite")
    if dim is not None and a.size != dim:
        raise PreconditionError(f"expected a point of dimension {dim}, got {a.size}")
    return a


def euclid_dist(a, b) -> float:
    """Euclidean distance |a - b|; raises on dimension mismatch."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise PreconditionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def chordal_dist(a, b) -> float:
    """Chordal distance q(a, b) on R^n ∪ {∞}.

    For finite points q(a,b) = |a-b| / (sqrt(1+|a|^2) sqrt(1+|b|^2)); a finite
    point and ∞ are at distance 1/sqrt(1+|a|^2); q(∞, ∞) = 0.  Range [0, sqrt(2)].
    """
    ainf, binf = is_infinity(a), is_infinity(b)
    if ainf and binf:
        return 0.0
    if ainf or binf:
        f = np.asarray(b if ainf else a, dtype=float)
        return float(1.0 / math.sqrt(1.0 + float(f @ f)))
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise PreconditionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    num = float(np.linalg.norm(a - b))
    return num / math.sqrt((1.0 + float(a @ a)) * (1.0 + float(b @ b)))


def _extended_equal(a, b) -> bool:
    ainf, binf = is_infinity(a), is_infinity(b)
    if ainf or binf:
        return ainf and binf
    return bool(np.array_equal(np.asarray(a, dtype=float), np.asarray(b, dtype=float)))


def absolute_ratio(a, b, c, d) -> float:
    """Absolute (cross) ratio |a,b,c,d| = q(a,c) q(b,d) / (q(a,b) q(c,d)).

    The four points of R^n ∪ {∞} must be pairwise distinct.  For four finite
    points this equals |a-c||b-d| / (|a-b||c-d|).
    """
    pts = (a, b, c, d)
    for i in range(4):
        for j in range(i + 1, 4):
            if _extended_equal(pts[i], pts[j]):
                raise PreconditionError("absolute ratio needs four pairwise distinct points")
    return (chordal_dist(a, c) * chordal_dist(b, d)) / (chordal_dist(a, b) * chordal_dist(c, d))
