"""Online geometric hitting sets.

Five online algorithms (fixed-width reweighting and its layered
orchestrator for hypercubes, center rounding for fat objects, extreme-point
selection for k-gon translates and its layered randomized wrapper for
homothets), the adversarial lower-bound instance tree, an exact offline
optimum, and an experiment harness.
"""

from .geometry import (
    EPS,
    AxisHypercube,
    BoundaryComponent,
    FatObject,
    Point,
    RegularKGon,
    angle_at,
    boundary_intersection_components,
    convex_distance,
    fat_box,
    fat_l2_ball,
    fat_linf_ball,
    hypercube_contains,
    kgon_metrics,
    linf_distance,
    reflect_through_origin,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .lattice import LatticeSpec, anc_round, count_bounds, enumerate_in_box

__version__ = "0.1.0"

__all__ = [
    "EPS",
    "KERNEL_BACKEND",
    "AxisHypercube",
    "BoundaryComponent",
    "FatObject",
    "LatticeSpec",
    "Point",
    "RegularKGon",
    "anc_round",
    "angle_at",
    "boundary_intersection_components",
    "convex_distance",
    "count_bounds",
    "enumerate_in_box",
    "fat_box",
    "fat_l2_ball",
    "fat_linf_ball",
    "hypercube_contains",
    "kgon_metrics",
    "linf_distance",
    "reflect_through_origin",
]
