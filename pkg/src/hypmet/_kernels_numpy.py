"""Pure-numpy implementations of the hot numeric kernels.

Every function here has a numba twin in ``_kernels_numba`` with identical
semantics; ``hypmet.kernels`` selects one of the two at import time.  The
shared conventions:

* the "product" minimized on a boundary is g = |x-p|^2 |y-p|^2 (the squared
  distance product); callers take the square root,
* golden-section refinement runs a fixed number of iterations with both
  probe points recomputed each step, so both backends trace the same math,
* circle scans add geometric ladders of samples around the boundary points
  nearest to x and y, which resolves the narrow dips that appear when a
  point sits very close to the boundary.
"""

from __future__ import annotations

import numpy as np

INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0
GOLDEN_ITERS = 75
TWO_PI = 2.0 * np.pi
_GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))
_CLUSTER_EXPONENTS = np.linspace(-2.0, 1.5, 16)
_CHUNK = 2048


def _circle_g(ang, x1, x2, y1, y2):
    """Squared product at circle points with angles ``ang``; x*, y* broadcast."""
    px = np.cos(ang)
    py = np.sin(ang)
    return ((px - x1) ** 2 + (py - x2) ** 2) * ((px - y1) ** 2 + (py - y2) ** 2)


def _golden_circle(lo, hi, x1, x2, y1, y2):
    """Vectorized golden-section minimization of the circle product on [lo, hi]."""
    for _ in range(GOLDEN_ITERS):
        span = hi - lo
        c = hi - INV_PHI * span
        d = lo + INV_PHI * span
        fc = _circle_g(c, x1, x2, y1, y2)
        fd = _circle_g(d, x1, x2, y1, y2)
        left = fc < fd
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
    mid = 0.5 * (lo + hi)
    return mid, _circle_g(mid, x1, x2, y1, y2)


def _circle_cluster(theta_c, width, x1, x2, y1, y2):
    """Best sample and bracket from a geometric ladder around ``theta_c``.

    Returns (t_lo, t_hi, t_best, g_best) per row.
    """
    offs = width[:, None] * 10.0 ** _CLUSTER_EXPONENTS[None, :]
    angles = np.concatenate([theta_c[:, None] - offs[:, ::-1], theta_c[:, None] + offs], axis=1)
    g = _circle_g(angles, x1[:, None], x2[:, None], y1[:, None], y2[:, None])
    j = np.argmin(g, axis=1)
    rows = np.arange(angles.shape[0])
    nc = offs.shape[1]
    jl = np.maximum(j - 1, 0)
    jr = np.minimum(j + 1, 2 * nc - 1)
    return angles[rows, jl], angles[rows, jr], angles[rows, j], g[rows, j]


def circle_min_batch(X, Y, m=1024, k_refine=6):
    """Minimum of |x-p||y-p| over the unit circle for each row pair (X[i], Y[i]).

    Returns (prods, thetas).  Scan: ``m`` uniform angles plus sample ladders
    around the boundary points nearest x and y; golden refinement of the
    ``k_refine`` best cyclic local minima and of the ladder brackets.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    B = X.shape[0]
    prods = np.empty(B)
    thetas = np.empty(B)
    for s in range(0, B, _CHUNK):
        e = min(s + _CHUNK, B)
        p, t = _circle_min_chunk(X[s:e], Y[s:e], m, k_refine)
        prods[s:e] = p
        thetas[s:e] = t
    return prods, thetas


def _circle_min_chunk(X, Y, m, k_refine):
    B = X.shape[0]
    x1, x2 = X[:, 0], X[:, 1]
    y1, y2 = Y[:, 0], Y[:, 1]
    grid = np.arange(m) * (TWO_PI / m)
    g = _circle_g(grid[None, :], x1[:, None], x2[:, None], y1[:, None], y2[:, None])

    vprev = np.roll(g, 1, axis=1)
    vnext = np.roll(g, -1, axis=1)
    is_min = (g <= vprev) & (g <= vnext)
    masked = np.where(is_min, g, np.inf)
    k = min(k_refine, m)
    idx = np.argpartition(masked, k - 1, axis=1)[:, :k]
    rows = np.arange(B)[:, None]

    t_at = grid[idx]
    lo = t_at - TWO_PI / m
    hi = t_at + TWO_PI / m

    rx = np.hypot(x1, x2)
    ry = np.hypot(y1, y2)
    wx = np.maximum(1.0 - rx, 1e-9)
    wy = np.maximum(1.0 - ry, 1e-9)
    tx = np.arctan2(x2, x1)
    ty = np.arctan2(y2, y1)
    cl_lo_x, cl_hi_x, cl_t_x, cl_g_x = _circle_cluster(tx, wx, x1, x2, y1, y2)
    cl_lo_y, cl_hi_y, cl_t_y, cl_g_y = _circle_cluster(ty, wy, x1, x2, y1, y2)

    lo_all = np.concatenate([lo, cl_lo_x[:, None], cl_lo_y[:, None]], axis=1)
    hi_all = np.concatenate([hi, cl_hi_x[:, None], cl_hi_y[:, None]], axis=1)
    t_ref, g_ref = _golden_circle(lo_all, hi_all, x1[:, None], x2[:, None], y1[:, None], y2[:, None])

    cand_t = np.concatenate([t_ref, t_at, cl_t_x[:, None], cl_t_y[:, None]], axis=1)
    cand_g = np.concatenate([g_ref, g[rows, idx], cl_g_x[:, None], cl_g_y[:, None]], axis=1)
    best = np.argmin(cand_g, axis=1)
    r = np.arange(B)
    theta = np.mod(cand_t[r, best], TWO_PI)
    return np.sqrt(np.maximum(cand_g[r, best], 0.0)), theta


def _quartic(t, a, A, b, B):
    return ((t - a) ** 2 + A) * ((t - b) ** 2 + B)


def quartic_min_batch(a, A, b, B, lo, hi):
    """Global minimum of q(t) = ((t-a)^2 + A)((t-b)^2 + B) over [lo, hi] per row.

    Stationary points come from the closed-form roots of the cubic q'/2,
    polished by Newton steps; interior candidates are compared with the
    interval endpoints.  Returns (t_min, q_min).
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    A = np.atleast_1d(np.asarray(A, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    B = np.atleast_1d(np.asarray(B, dtype=float))
    lo = np.broadcast_to(np.asarray(lo, dtype=float), a.shape).astype(float)
    hi = np.broadcast_to(np.asarray(hi, dtype=float), a.shape).astype(float)

    s = a + b
    P = a * b
    c1 = s * s + 2.0 * P + A + B
    c0 = -(P * s + a * B + b * A)
    # depressed cubic u^3 + p u + q, t = u + s/2
    pd = 0.5 * c1 - 0.75 * s * s
    qd = 0.25 * (-s**3 + s * c1 + 2.0 * c0)
    disc = (0.5 * qd) ** 2 + (pd / 3.0) ** 3

    three = (disc <= 0.0) & (pd < 0.0)
    # single-real branch
    sq = np.sqrt(np.maximum(disc, 0.0))
    u_single = np.cbrt(-0.5 * qd + sq) + np.cbrt(-0.5 * qd - sq)
    # three-real branch (trig method)
    pm = np.where(three, pd, -3.0)  # placeholder -3 keeps sqrt/acos well defined
    mm = 2.0 * np.sqrt(-pm / 3.0)
    arg = np.clip(3.0 * qd / (pm * mm), -1.0, 1.0)
    th = np.arccos(arg) / 3.0
    u0 = mm * np.cos(th)
    u1 = mm * np.cos(th - 2.0 * np.pi / 3.0)
    u2 = mm * np.cos(th - 4.0 * np.pi / 3.0)

    shift = 0.5 * s
    r0 = np.where(three, u0, u_single) + shift
    r1 = np.where(three, u1, u_single) + shift
    r2 = np.where(three, u2, u_single) + shift

    roots = np.stack([r0, r1, r2], axis=1)
    aa, bb = a[:, None], b[:, None]
    ss, cc1 = s[:, None], c1[:, None]
    cc0 = c0[:, None]
    for _ in range(3):  # Newton polish on the cubic
        C = 2.0 * roots**3 - 3.0 * ss * roots**2 + cc1 * roots + cc0
        Cp = 6.0 * roots**2 - 6.0 * ss * roots + cc1
        step = np.where(np.abs(Cp) > 1e-300, C / Cp, 0.0)
        roots = roots - step

    cand = np.concatenate(
        [np.clip(roots, lo[:, None], hi[:, None]), lo[:, None], hi[:, None]], axis=1
    )
    vals = _quartic(cand, aa, A[:, None], bb, B[:, None])
    j = np.argmin(vals, axis=1)
    r = np.arange(a.shape[0])
    return cand[r, j], vals[r, j]


def cloud_min_batch(P, X, Y):
    """Minimum distance product over the sample cloud P for each pair row.

    Non-finite rows of P are ignored.  Returns (indices, prods).
    """
    P = np.asarray(P, dtype=float)
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    good = np.all(np.isfinite(P), axis=1)
    pn = np.where(good, np.einsum("ij,ij->i", np.where(good[:, None], P, 0.0),
                                  np.where(good[:, None], P, 0.0)), np.inf)
    Pz = np.where(good[:, None], P, 0.0)
    B = X.shape[0]
    idxs = np.empty(B, dtype=np.int64)
    prods = np.empty(B)
    for s in range(0, B, _CHUNK):
        e = min(s + _CHUNK, B)
        xs, ys = X[s:e], Y[s:e]
        d2x = np.maximum(pn[None, :] - 2.0 * xs @ Pz.T + np.einsum("ij,ij->i", xs, xs)[:, None], 0.0)
        d2y = np.maximum(pn[None, :] - 2.0 * ys @ Pz.T + np.einsum("ij,ij->i", ys, ys)[:, None], 0.0)
        g = d2x * d2y
        g[:, ~good] = np.inf
        j = np.argmin(g, axis=1)
        idxs[s:e] = j
        prods[s:e] = np.sqrt(g[np.arange(e - s), j])
    return idxs, prods


def pair_sup_scan(P, x, y):
    """Maximum of |x-y||p-q| / sqrt(|x-p||y-q||x-q||y-p|) over sample pairs p != q.

    Returns (value, i, j) with i < j.  Non-finite rows of P are skipped.
    """
    P = np.asarray(P, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    M = P.shape[0]
    good = np.all(np.isfinite(P), axis=1)
    Pz = np.where(good[:, None], P, 0.0)
    dx = np.linalg.norm(Pz - x[None, :], axis=1)
    dy = np.linalg.norm(Pz - y[None, :], axis=1)
    w = np.where(good, dx * dy, np.inf)
    s2 = float(np.sum((x - y) ** 2))
    pn = np.einsum("ij,ij->i", Pz, Pz)

    best = -1.0
    bi = bj = 0
    for s in range(0, M, _CHUNK):
        e = min(s + _CHUNK, M)
        d2 = np.maximum(pn[s:e, None] - 2.0 * Pz[s:e] @ Pz.T + pn[None, :], 0.0)
        k2 = s2 * d2 / (w[s:e, None] * w[None, :])
        # keep only i < j
        cols = np.arange(M)[None, :]
        k2 = np.where(cols > np.arange(s, e)[:, None], k2, -np.inf)
        flat = np.argmax(k2)
        i_loc, j_loc = divmod(int(flat), M)
        v = k2[i_loc, j_loc]
        if v > best:
            best = float(v)
            bi, bj = s + i_loc, j_loc
    return float(np.sqrt(max(best, 0.0))), bi, bj


def sphere_min_scan(x, y, n):
    """Scan a Fibonacci lattice of ``n`` points on the unit sphere.

    Returns (k_best, g_best) with g the squared distance product.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    best_g = np.inf
    best_k = 0
    for s in range(0, n, 1 << 18):
        e = min(s + (1 << 18), n)
        k = np.arange(s, e, dtype=float)
        z = 1.0 - (2.0 * k + 1.0) / n
        rho = np.sqrt(np.maximum(1.0 - z * z, 0.0))
        phi = np.mod(k * _GOLDEN_ANGLE, TWO_PI)
        px = rho * np.cos(phi)
        py = rho * np.sin(phi)
        d2x = (px - x[0]) ** 2 + (py - x[1]) ** 2 + (z - x[2]) ** 2
        d2y = (px - y[0]) ** 2 + (py - y[1]) ** 2 + (z - y[2]) ** 2
        g = d2x * d2y
        j = int(np.argmin(g))
        if g[j] < best_g:
            best_g = float(g[j])
            best_k = s + j
    return best_k, best_g


def plane_min_scan(x, y, half_width, m):
    """Scan an m x m grid on the plane x3 = 0 over [-half_width, half_width]^2.

    Returns (i, j, g_best).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    step = 2.0 * half_width / (m - 1)
    ts = -half_width + step * np.arange(m)
    best_g = np.inf
    bi = bj = 0
    for s in range(0, m, 256):
        e = min(s + 256, m)
        u = ts[s:e][:, None]
        v = ts[None, :]
        d2x = (u - x[0]) ** 2 + (v - x[1]) ** 2 + x[2] ** 2
        d2y = (u - y[0]) ** 2 + (v - y[1]) ** 2 + y[2] ** 2
        g = d2x * d2y
        flat = int(np.argmin(g))
        i_loc, j_loc = divmod(flat, m)
        if g[i_loc, j_loc] < best_g:
            best_g = float(g[i_loc, j_loc])
            bi, bj = s + i_loc, j_loc
    return bi, bj, best_g
