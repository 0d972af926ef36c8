"""Numba @njit implementations of the hot numeric kernels.

Twin of ``_kernels_numpy``: same functions, same math, same iteration
counts, scalar loops instead of vectorization.  Selected by
``hypmet.kernels`` when the backend is "numba".
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
GOLDEN_ITERS = 75
TWO_PI = 2.0 * math.pi
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
_N_CLUSTER = 16


@njit(cache=True)
def _g_circle(t, x1, x2, y1, y2):
    px = math.cos(t)
    py = math.sin(t)
    return ((px - x1) ** 2 + (py - x2) ** 2) * ((px - y1) ** 2 + (py - y2) ** 2)


@njit(cache=True)
def _golden_circle(lo, hi, x1, x2, y1, y2):
    for _ in range(GOLDEN_ITERS):
        span = hi - lo
        c = hi - INV_PHI * span
        d = lo + INV_PHI * span
        if _g_circle(c, x1, x2, y1, y2) < _g_circle(d, x1, x2, y1, y2):
            hi = d
        else:
            lo = c
    mid = 0.5 * (lo + hi)
    return mid, _g_circle(mid, x1, x2, y1, y2)


@njit(cache=True)
def _cluster_best(theta_c, width, x1, x2, y1, y2):
    # geometric ladder of offsets on both sides of theta_c, sorted ascending
    n = 2 * _N_CLUSTER
    angles = np.empty(n)
    for j in range(_N_CLUSTER):
        expo = -2.0 + 3.5 * j / (_N_CLUSTER - 1)
        off = width * 10.0 ** expo
        angles[_N_CLUSTER - 1 - j] = theta_c - off
        angles[_N_CLUSTER + j] = theta_c + off
    best_j = 0
    best_g = np.inf
    for j in range(n):
        g = _g_circle(angles[j], x1, x2, y1, y2)
        if g < best_g:
            best_g = g
            best_j = j
    jl = best_j - 1 if best_j > 0 else best_j
    jr = best_j + 1 if best_j < n - 1 else best_j
    return angles[jl], angles[jr], angles[best_j], best_g


@njit(cache=True)
def _circle_min_one(x1, x2, y1, y2, m):
    step = TWO_PI / m
    g = np.empty(m)
    for k in range(m):
        g[k] = _g_circle(k * step, x1, x2, y1, y2)
    best_g = np.inf
    best_t = 0.0
    for k in range(m):
        gk = g[k]
        if gk < best_g:
            best_g = gk
            best_t = k * step
        if gk <= g[(k - 1) % m] and gk <= g[(k + 1) % m]:
            t, v = _golden_circle((k - 1) * step, (k + 1) * step, x1, x2, y1, y2)
            if v < best_g:
                best_g = v
                best_t = t

    rx = math.hypot(x1, x2)
    ry = math.hypot(y1, y2)
    for c in range(2):
        if c == 0:
            tc = math.atan2(x2, x1)
            w = max(1.0 - rx, 1e-9)
        else:
            tc = math.atan2(y2, y1)
            w = max(1.0 - ry, 1e-9)
        lo, hi, tbest, gbest = _cluster_best(tc, w, x1, x2, y1, y2)
        if gbest < best_g:
            best_g = gbest
            best_t = tbest
        t, v = _golden_circle(lo, hi, x1, x2, y1, y2)
        if v < best_g:
            best_g = v
            best_t = t
    if best_g < 0.0:
        best_g = 0.0
    return math.sqrt(best_g), best_t % TWO_PI


@njit(cache=True)
def circle_min_batch(X, Y, m=1024, k_refine=6):
    B = X.shape[0]
    prods = np.empty(B)
    thetas = np.empty(B)
    for i in range(B):
        prods[i], thetas[i] = _circle_min_one(X[i, 0], X[i, 1], Y[i, 0], Y[i, 1], m)
    return prods, thetas


@njit(cache=True)
def _cbrt(v):
    if v < 0.0:
        return -((-v) ** (1.0 / 3.0))
    return v ** (1.0 / 3.0)


@njit(cache=True)
def _quartic_val(t, a, A, b, B):
    return ((t - a) ** 2 + A) * ((t - b) ** 2 + B)


@njit(cache=True)
def _quartic_min_one(a, A, b, B, lo, hi):
    s = a + b
    P = a * b
    c1 = s * s + 2.0 * P + A + B
    c0 = -(P * s + a * B + b * A)
    pd = 0.5 * c1 - 0.75 * s * s
    qd = 0.25 * (-(s**3) + s * c1 + 2.0 * c0)
    disc = (0.5 * qd) ** 2 + (pd / 3.0) ** 3

    r = np.empty(3)
    if disc <= 0.0 and pd < 0.0:
        mm = 2.0 * math.sqrt(-pd / 3.0)
        arg = 3.0 * qd / (pd * mm)
        if arg > 1.0:
            arg = 1.0
        elif arg < -1.0:
            arg = -1.0
        th = math.acos(arg) / 3.0
        r[0] = mm * math.cos(th)
        r[1] = mm * math.cos(th - 2.0 * math.pi / 3.0)
        r[2] = mm * math.cos(th - 4.0 * math.pi / 3.0)
    else:
        sq = math.sqrt(max(disc, 0.0))
        u = _cbrt(-0.5 * qd + sq) + _cbrt(-0.5 * qd - sq)
        r[0] = u
        r[1] = u
        r[2] = u
    shift = 0.5 * s
    for k in range(3):
        t = r[k] + shift
        for _ in range(3):
            C = 2.0 * t**3 - 3.0 * s * t**2 + c1 * t + c0
            Cp = 6.0 * t**2 - 6.0 * s * t + c1
            if abs(Cp) > 1e-300:
                t = t - C / Cp
        r[k] = t

    best_t = lo
    best_v = _quartic_val(lo, a, A, b, B)
    for k in range(3):
        t = r[k]
        if t < lo:
            t = lo
        elif t > hi:
            t = hi
        v = _quartic_val(t, a, A, b, B)
        if v < best_v:
            best_v = v
            best_t = t
    v = _quartic_val(hi, a, A, b, B)
    if v < best_v:
        best_v = v
        best_t = hi
    return best_t, best_v


@njit(cache=True)
def quartic_min_batch(a, A, b, B, lo, hi):
    n = a.shape[0]
    ts = np.empty(n)
    vs = np.empty(n)
    for i in range(n):
        ts[i], vs[i] = _quartic_min_one(a[i], A[i], b[i], B[i], lo[i], hi[i])
    return ts, vs


@njit(cache=True)
def cloud_min_batch(P, X, Y):
    M = P.shape[0]
    n = P.shape[1]
    B = X.shape[0]
    good = np.empty(M, dtype=np.bool_)
    for k in range(M):
        ok = True
        for d in range(n):
            if not math.isfinite(P[k, d]):
                ok = False
                break
        good[k] = ok
    idxs = np.empty(B, dtype=np.int64)
    prods = np.empty(B)
    for i in range(B):
        best = np.inf
        bk = 0
        for k in range(M):
            if not good[k]:
                continue
            d2x = 0.0
            d2y = 0.0
            for d in range(n):
                d2x += (P[k, d] - X[i, d]) ** 2
                d2y += (P[k, d] - Y[i, d]) ** 2
            g = d2x * d2y
            if g < best:
                best = g
                bk = k
        idxs[i] = bk
        prods[i] = math.sqrt(best)
    return idxs, prods


@njit(cache=True)
def pair_sup_scan(P, x, y):
    M = P.shape[0]
    n = P.shape[1]
    w = np.empty(M)
    for k in range(M):
        d2x = 0.0
        d2y = 0.0
        ok = True
        for d in range(n):
            if not math.isfinite(P[k, d]):
                ok = False
                break
            d2x += (P[k, d] - x[d]) ** 2
            d2y += (P[k, d] - y[d]) ** 2
        w[k] = math.sqrt(d2x * d2y) if ok else np.inf
    s2 = 0.0
    for d in range(n):
        s2 += (x[d] - y[d]) ** 2
    best = -np.inf
    bi = 0
    bj = 0
    for i in range(M):
        if not math.isfinite(w[i]):
            continue
        for j in range(i + 1, M):
            if not math.isfinite(w[j]):
                continue
            d2 = 0.0
            for d in range(n):
                d2 += (P[i, d] - P[j, d]) ** 2
            k2 = s2 * d2 / (w[i] * w[j])
            if k2 > best:
                best = k2
                bi = i
                bj = j
    if best < 0.0:
        best = 0.0
    return math.sqrt(best), bi, bj


@njit(cache=True)
def sphere_min_scan(x, y, n):
    best_g = np.inf
    best_k = 0
    for k in range(n):
        z = 1.0 - (2.0 * k + 1.0) / n
        rho2 = 1.0 - z * z
        rho = math.sqrt(rho2 if rho2 > 0.0 else 0.0)
        phi = (k * _GOLDEN_ANGLE) % TWO_PI
        px = rho * math.cos(phi)
        py = rho * math.sin(phi)
        d2x = (px - x[0]) ** 2 + (py - x[1]) ** 2 + (z - x[2]) ** 2
        d2y = (px - y[0]) ** 2 + (py - y[1]) ** 2 + (z - y[2]) ** 2
        g = d2x * d2y
        if g < best_g:
            best_g = g
            best_k = k
    return best_k, best_g


@njit(cache=True)
def plane_min_scan(x, y, half_width, m):
    step = 2.0 * half_width / (m - 1)
    best_g = np.inf
    bi = 0
    bj = 0
    for i in range(m):
        u = -half_width + step * i
        d2xu = (u - x[0]) ** 2 + x[2] ** 2
        d2yu = (u - y[0]) ** 2 + y[2] ** 2
        for j in range(m):
            v = -half_width + step * j
            g = (d2xu + (v - x[1]) ** 2) * (d2yu + (v - y[1]) ** 2)
            if g < best_g:
                best_g = g
                bi = i
                bj = j
    return bi, bj, best_g
