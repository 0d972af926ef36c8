"""Hyperbolic-type metrics on subdomains of R^n.

Four metrics (the hyperbolic metric of the ball / half space, the distance
ratio metric, and the scale-invariant and Moebius-invariant Cassinian
metrics), Cassinian oval geometry, Moebius transformations, and a
verification harness for the sharp comparison constants between them.
"""

from .domains import (
    BoundaryCloud,
    CassinianOval,
    HalfSpace,
    OvalClass,
    Polygon2D,
    UnitBall,
    boundary_inf_product,
    dist_to_boundary,
    maximal_oval,
    oval_classify,
    oval_max_radius,
    oval_trace,
)
from .errors import OutsideDomainError, PreconditionError
from .geometry import INFINITY, absolute_ratio, chordal_dist, euclid_dist
from .kernels import BACKEND
from .metrics import (
    MetricValue,
    Method,
    extremal_rotations,
    j_metric,
    rho,
    rho_axis,
    rho_sup_absratio,
    tau,
    ttau,
    ttau_ball_collinear,
    ttau_ball_equal_norm,
    ttau_ball_origin,
    ttau_bounds_ball,
    ttau_bounds_halfplane,
    ttau_halfplane_equal_height,
    ttau_halfplane_vertical,
)
from .moebius import MoebiusMap, apply, canonical_h2b, compose, inverse
from .solver import (
    BoundaryExtremum,
    min_product_circle,
    min_product_line,
    min_product_segment,
    oracle_min_product,
    sup_pair_product,
)

__version__ = "0.1.0"
