"""Deterministic online hitting of similarly sized fat objects.

Each unhit object of width w picks the rounding of its center to the
lattice (2^(i+1) Z)^d with i = floor(log2 w); that point lies inside the
object's inscribed L-infinity ball of radius >= 2^i.
"""

import math

from .errors import GeomHitError, InconsistentFatObject
from .geometry import linf_distance
from .lattice import anc_round


def width_layer(width):
    """Layer index i with width in [2^i, 2^(i+1)); exact at powers of two."""
    m, e = math.frexp(width)
    return e - 1


def anc_bound(alpha, d, M):
    """Proven competitive-ratio bound floor(2/alpha + 2)^d * (floor(log2 M) + 1)."""
    if not (0 < alpha <= 1):
        raise GeomHitError("alpha must be in (0, 1]")
    if not M > 1:
        raise GeomHitError("M must exceed 1")
    return math.floor(2.0 / alpha + 2.0) ** d * (math.floor(math.log2(M)) + 1)


class AncState:
    """Chosen points (all integer, since every (2^(i+1) Z)^d is a subset of
    Z^d) plus a per-layer tally for reporting."""

    def __init__(self, max_width):
        self.max_width = float(max_width)
        self.chosen = []
        self._chosen_set = set()
        self.layer_tally = {}

    def is_hit(self, obj):
        return any(obj.contains(p) for p in self.chosen)


def anc_step(state, obj):
    """Present one fat object; returns the placed point or None."""
    w = obj.width
    if not (1.0 <= w <= state.max_width):
        raise GeomHitError(f"width {w} outside [1, {state.max_width}]")
    if state.is_hit(obj):
        return None
    i = width_layer(w)
    r = anc_round(obj.center, i)
    if linf_distance(r, obj.center) > 2.0**i + 1e-9:
        raise GeomHitError("rounded point farther than 2^i from the center")
    if not obj.contains(r):
        raise InconsistentFatObject(
            "rounded lattice point not inside the object; its stated width "
            "contradicts its membership predicate"
        )
    state.chosen.append(r)
    state._chosen_set.add(r)
    state.layer_tally[i] = state.layer_tally.get(i, 0) + 1
    return r
