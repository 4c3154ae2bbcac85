"""Scaled integer lattices (beta Z)^d: box enumeration, count brackets,
and the power-of-two rounding rule used by the fat-object algorithm."""

import math
from dataclasses import dataclass
from itertools import product

from .errors import DimensionMismatch, GeomHitError

# relative guard against float noise exactly on a box face
_BOUNDARY_GUARD = 1e-12


@dataclass(frozen=True)
class LatticeSpec:
    spacing: float
    dimension: int

    def __post_init__(self):
        object.__setattr__(self, "spacing", float(self.spacing))
        if not self.spacing > 0:
            raise GeomHitError("lattice spacing must be positive")
        if self.dimension < 1:
            raise GeomHitError("lattice dimension must be >= 1")


def _axis_index_range(lo, hi, beta, closed):
    eps = _BOUNDARY_GUARD * beta
    if closed:
        zmin = math.ceil((lo - eps) / beta)
        zmax = math.floor((hi + eps) / beta)
    else:
        zmin = math.floor((lo + eps) / beta) + 1
        zmax = math.ceil((hi - eps) / beta) - 1
    return zmin, zmax


def axis_ranges(lattice, h):
    if lattice.dimension != h.dim:
        raise DimensionMismatch(f"lattice d={lattice.dimension} vs cube d={h.dim}")
    return [
        _axis_index_range(lo, hi, lattice.spacing, h.closed) for lo, hi in h.bounds()
    ]


def count_in_box(lattice, h):
    """Number of lattice points in the cube, without materializing them."""
    n = 1
    for zmin, zmax in axis_ranges(lattice, h):
        if zmax < zmin:
            return 0
        n *= zmax - zmin + 1
    return n


def enumerate_in_box(lattice, h):
    """Lattice points inside the cube in lexicographic order."""
    ranges = axis_ranges(lattice, h)
    beta = lattice.spacing
    axes = []
    for zmin, zmax in ranges:
        if zmax < zmin:
            return []
        axes.append([z * beta for z in range(zmin, zmax + 1)])
    return [tuple(c) for c in product(*axes)]


def count_bounds(ell, r, d):
    """Observation-style bracket (floor(ell)^d, floor(r+1)^d) for cubes with
    side length between ell*beta and r*beta."""
    if not (0 < ell < r):
        raise GeomHitError("need 0 < ell < r")
    return math.floor(ell) ** d, math.floor(r + 1) ** d


def anc_round(c, i):
    """Round a center to (2**(i+1) Z)^d, coordinate-wise.

    Writing c_j = z_j + f_j with z_j in 2**(i+1) Z and f_j in [0, 2**(i+1)),
    the result keeps z_j when f_j < 2**i and moves up to z_j + 2**(i+1)
    otherwise (ties at exactly 2**i go up).  The result is within L-infinity
    distance 2**i of c, and is a closest point of the coarse lattice.
    """
    step = 2.0 ** (i + 1)
    half = 2.0 ** i
    out = []
    for cj in c:
        z = math.floor(cj / step)
        f = cj - z * step
        if f >= half:
            z += 1
        out.append(z * step)
    return tuple(out)
