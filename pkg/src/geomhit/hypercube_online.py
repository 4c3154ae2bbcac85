"""Randomized online hitting of homothetic hypercubes with lattice points.

One fixed-width subroutine state per size layer (iterative reweighting
with tripling), plus the layered orchestrator that routes each arriving
cube through a fixed-width core.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeomHitError, InvariantViolation
from .geometry import EPS, AxisHypercube
from .lattice import LatticeSpec, count_in_box, enumerate_in_box

SAMPLE_FACTOR = 2.5  # draws per reweighting round: ceil(5d/2)


def layer_spacing(k):
    """Grid spacing s(k): 2*2^(k/2-1) for even k, 3*2^((k-1)/2-1) for odd."""
    if k < 0:
        raise GeomHitError("layer index must be >= 0")
    if k % 2 == 0:
        return 2.0 ** (k // 2)
    return 3.0 * 2.0 ** ((k - 3) // 2) if k >= 3 else 1.5


@dataclass(frozen=True)
class LayerAssignment:
    k: int
    spacing: float

    @property
    def width_range(self):
        """Half-open width interval [s(k), s(k+1)) covered by this layer."""
        return (layer_spacing(self.k), layer_spacing(self.k + 1))


def layer_of(width):
    """Layer of a cube of the given width (half side length).

    Implements the half-open interval table (even layers cover
    [2*2^(k/2-1), 3*2^(k/2-1)), odd layers [3*2^((k-1)/2-1), 4*2^((k-1)/2-1))),
    which tiles [1, inf).  Note this disagrees with the floor(log_{3/2} w)
    shorthand sometimes quoted for the same layering; the interval table is
    what the core construction's counting window relies on, so it wins.
    """
    if width < 1.0:
        raise GeomHitError("layered hitting requires width >= 1")
    m, e = math.frexp(width)  # width = m * 2^e, m in [0.5, 1)
    j = e - 1
    k = 2 * j if width < 1.5 * 2.0**j else 2 * j + 1
    return LayerAssignment(k, layer_spacing(k))


class WeightMap:
    """Sparse weights over (s Z)^d with default 3^-(d+1)."""

    def __init__(self, spacing, dimension):
        self.spacing = spacing
        self.dimension = dimension
        self.default = 3.0 ** -(dimension + 1)
        self.overrides = {}

    def __getitem__(self, p):
        return self.overrides.get(p, self.default)

    def triple(self, pts):
        for p in pts:
            self.overrides[p] = self.overrides.get(p, self.default) * 3.0


class RirState:
    """State of the fixed-width reweighting subroutine for one grid spacing."""

    def __init__(self, spacing, dimension, rng):
        self.spacing = spacing
        self.dimension = dimension
        self.lattice = LatticeSpec(spacing, dimension)
        self.a1 = set()
        self.a2 = set()
        self.b = set()
        self.presented = 0
        self.weights = WeightMap(spacing, dimension)
        self.rng = rng

    @property
    def solution(self):
        return self.a1 | self.a2

    def _sample(self, pts):
        """One draw from the weight distribution restricted to pts (lex order)."""
        weights = [self.weights[p] for p in pts]
        total = sum(weights)
        u = float(self.rng.random()) * total
        acc = 0.0
        for p, w in zip(pts, weights):
            acc += w
            if u <= acc:
                return p
        return pts[-1]


def rir_step(state, cube):
    """Present one width-s hypercube to the subroutine; returns points
    newly added to the solution set."""
    s = state.spacing
    if abs(cube.width - s) > 1e-9:
        raise GeomHitError(f"cube width {cube.width} != subroutine width {s}")
    pts = enumerate_in_box(state.lattice, cube)
    lo, hi = 2**state.dimension, 3**state.dimension
    if not (lo <= len(pts) <= hi):
        raise InvariantViolation(
            f"cube holds {len(pts)} grid points, outside [{lo}, {hi}]"
        )
    state.presented += 1

    sol = state.solution
    if any(p in sol for p in pts):
        return []
    in_b = [p for p in pts if p in state.b]
    if in_b:
        p = min(in_b)
        state.a1.add(p)
        return [p]
    total = sum(state.weights[p] for p in pts)
    if total >= 1.0:
        p = pts[0]  # lexicographically smallest
        state.a2.add(p)
        return [p]
    draws = math.ceil(SAMPLE_FACTOR * state.dimension)
    for _ in range(draws):
        state.b.add(state._sample(pts))
    p = min(q for q in pts if q in state.b)
    state.a1.add(p)
    state.weights.triple(pts)
    return [p]


def core_of(cube, layer):
    """Fixed-width core: a closed cube of width s(k) holding exactly the
    same grid points as the input cube."""
    s = layer.spacing
    lo, hi = layer.width_range
    if not (lo - EPS <= cube.width < hi + EPS):
        raise GeomHitError(f"width {cube.width} outside layer {layer.k} range")
    lattice = LatticeSpec(s, cube.dim)
    pts = enumerate_in_box(lattice, cube)
    if not pts:
        raise GeomHitError("cube contains no grid points of its layer lattice")
    mins = [min(p[j] for p in pts) for j in range(cube.dim)]
    maxs = [max(p[j] for p in pts) for j in range(cube.dim)]
    center = tuple((a + b) / 2.0 for a, b in zip(mins, maxs))
    core = AxisHypercube(center, s, closed=True)
    core_pts = enumerate_in_box(lattice, core)
    if set(core_pts) != set(pts):
        raise InvariantViolation("core grid points differ from the cube's")
    return core


class LirState:
    """Layered orchestrator over per-spacing subroutine states."""

    def __init__(self, dimension, max_width, seed):
        self.dimension = dimension
        self.max_width = float(max_width)
        self.seed = seed
        self.layers = {}
        self.presented = 0

    @property
    def solution(self):
        out = set()
        for st in self.layers.values():
            out |= st.solution
        return out

    @property
    def cost(self):
        return sum(len(st.a1) + len(st.a2) for st in self.layers.values())

    def _layer_state(self, k):
        st = self.layers.get(k)
        if st is None:
            seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(k,))
            rng = np.random.Generator(np.random.PCG64(seq))
            st = RirState(layer_spacing(k), self.dimension, rng)
            self.layers[k] = st
        return st

    def is_hit(self, cube):
        return any(cube.contains(p) for st in self.layers.values() for p in st.solution)


def lir_step(state, cube):
    """Present one hypercube (width in [1, M]); returns points added."""
    if not (1.0 - EPS <= cube.width <= state.max_width + EPS):
        raise GeomHitError(
            f"width {cube.width} outside [1, {state.max_width}]"
        )
    state.presented += 1
    if state.is_hit(cube):
        return []
    layer = layer_of(cube.width)
    lo, hi = 2**cube.dim, 3**cube.dim
    n = count_in_box(LatticeSpec(layer.spacing, cube.dim), cube)
    if not (lo <= n <= hi):
        raise InvariantViolation(
            f"layer {layer.k} cube holds {n} grid points, outside [{lo}, {hi}]"
        )
    core = core_of(cube, layer)
    added = rir_step(state._layer_state(layer.k), core)
    if not added and not state.is_hit(cube):
        raise InvariantViolation("cube not hit after its core was processed")
    return added
