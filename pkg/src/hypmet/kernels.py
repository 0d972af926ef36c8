"""Backend selection for the hot numeric kernels.

The environment variable ``HYPMET_BACKEND`` picks the implementation:

* ``numba`` — force the @njit kernels (import error if numba is missing),
* ``numpy`` — force the pure-numpy kernels,
* ``auto`` or unset — numba when importable, numpy otherwise.

Both backends expose the same functions with the same semantics; the
benchmark in ``benchmarks/bench_backends.py`` compares them.
"""

from __future__ import annotations

import math
import os

from . import _kernels_numpy

_choice = os.environ.get("HYPMET_BACKEND", "auto").lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"HYPMET_BACKEND must be auto|numba|numpy, got {_choice!r}")

if _choice == "numpy":
    _impl = _kernels_numpy
    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl  # noqa: F401

        BACKEND = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        _impl = _kernels_numpy
        BACKEND = "numpy"

circle_min_batch = _impl.circle_min_batch
quartic_min_batch = _impl.quartic_min_batch
cloud_min_batch = _impl.cloud_min_batch
pair_sup_scan = _impl.pair_sup_scan
sphere_min_scan = _impl.sphere_min_scan
plane_min_scan = _impl.plane_min_scan

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_minimize(f, lo: float, hi: float, iters: int = 75):
    """Scalar golden-section minimization of ``f`` on [lo, hi].

    Fixed iteration count with both probes recomputed per step (the same
    scheme the kernels use); returns (argmin, value).
    """
    for _ in range(iters):
        span = hi - lo
        c = hi - INV_PHI * span
        d = lo + INV_PHI * span
        if f(c) < f(d):
            hi = d
        else:
            lo = c
    mid = 0.5 * (lo + hi)
    return mid, f(mid)


def golden_maximize(f, lo: float, hi: float, iters: int = 75):
    t, v = golden_minimize(lambda u: -f(u), lo, hi, iters)
    return t, -v
