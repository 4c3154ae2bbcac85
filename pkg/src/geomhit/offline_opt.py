"""Exact minimum hitting set at desk scale.

Branch and bound over the object-candidate incidence structure with a
greedy upper bound and a disjoint-objects lower bound, preceded by the
optimality-preserving reductions (duplicate/dominated candidates,
dominated objects, forced singletons) that keep lattice-variant
instances small enough to solve exactly.
"""

import math
from dataclasses import dataclass

from .errors import GeomHitError, InfeasibleInstance
from .geometry import AxisHypercube, FatObject, RegularKGon
from .lattice import LatticeSpec, enumerate_in_box


def object_contains(obj, p):
    """Closed containment for any supported geometric object."""
    if isinstance(obj, AxisHypercube):
        return AxisHypercube(obj.center, obj.width, closed=True).contains(p)
    if isinstance(obj, (RegularKGon, FatObject)):
        return obj.contains(p)
    raise GeomHitError(f"unsupported object type {type(obj).__name__}")


def _bounding_cube(obj):
    if isinstance(obj, AxisHypercube):
        return AxisHypercube(obj.center, obj.width, closed=True)
    if isinstance(obj, RegularKGon):
        return AxisHypercube(obj.center, obj.circumradius, closed=True)
    if isinstance(obj, FatObject):
        return AxisHypercube(obj.center, obj.height, closed=True)
    raise GeomHitError(f"unsupported object type {type(obj).__name__}")


def candidates_for_lattice_variant(objects, lattice=None):
    """Union of the lattice points contained in each object, lex-sorted.

    Points outside every object can never help an optimal solution, so
    the returned set is a complete candidate universe for these objects.
    """
    if not objects:
        return []
    if lattice is None:
        d = len(objects[0].center)
        lattice = LatticeSpec(1.0, d)
    seen = set()
    for obj in objects:
        box = _bounding_cube(obj)
        for p in enumerate_in_box(lattice, box):
            if p not in seen and object_contains(obj, p):
                seen.add(p)
    return sorted(seen)


@dataclass(frozen=True)
class HitInstance:
    objects: tuple
    candidates: tuple

    @staticmethod
    def from_objects(objects, candidates):
        return HitInstance(tuple(objects), tuple(candidates))


def _incidence(inst):
    obj_masks = []
    for obj in inst.objects:
        mask = 0
        for ci, p in enumerate(inst.candidates):
            if object_contains(obj, p):
                mask |= 1 << ci
        obj_masks.append(mask)
    return obj_masks


def _reduce(obj_masks, n_cand):
    """Optimality-preserving reductions; returns (kept candidate indices,
    reduced object masks over the kept candidates, forced candidate indices)."""
    infeasible = [i for i, m in enumerate(obj_masks) if m == 0]
    if infeasible:
        raise InfeasibleInstance(f"object {infeasible[0]} contains no candidate")

    forced = set()
    masks = list(dict.fromkeys(obj_masks))  # duplicate objects collapse
    # an object whose candidates include another object's candidate set is
    # hit automatically once the latter is hit
    masks.sort(key=lambda m: m.bit_count())
    kept_obj = []
    for m in masks:
        if not any(km & m == km for km in kept_obj):
            kept_obj.append(m)

    while True:
        units = [m for m in kept_obj if m.bit_count() == 1]
        if not units:
            break
        for m in units:
            forced.add(m.bit_length() - 1)
        hit = 0
        for ci in forced:
            hit |= 1 << ci
        kept_obj = [m for m in kept_obj if m & hit == 0]
        if not kept_obj:
            break

    cand_cover = {}
    for ci in range(n_cand):
        bit = 1 << ci
        cover = 0
        for oi, m in enumerate(kept_obj):
            if m & bit:
                cover |= 1 << oi
        if cover:
            prev = cand_cover.get(cover)
            if prev is None or ci < prev:
                cand_cover[cover] = ci
    # drop candidates whose coverage is contained in another's
    items = sorted(cand_cover.items(), key=lambda kv: -kv[0].bit_count())
    kept_cand = []
    kept_covers = []
    for cover, ci in items:
        if not any(cover & kc == cover for kc in kept_covers):
            kept_covers.append(cover)
            kept_cand.append(ci)
    order = sorted(range(len(kept_cand)), key=lambda i: kept_cand[i])
    kept_cand = [kept_cand[i] for i in order]
    kept_covers = [kept_covers[i] for i in order]
    return kept_cand, kept_covers, sorted(forced), len(kept_obj)


def _greedy_cover(covers, all_objs):
    chosen = []
    remaining = all_objs
    while remaining:
        best = max(range(len(covers)), key=lambda i: (covers[i] & remaining).bit_count())
        if covers[best] & remaining == 0:
            raise InfeasibleInstance("greedy found an uncoverable object")
        chosen.append(best)
        remaining &= ~covers[best]
    return chosen


def _disjoint_lower_bound(remaining, obj_masks_red):
    """Objects with pairwise disjoint candidate sets each need their own point."""
    lb = 0
    used = 0
    oi = 0
    rem = remaining
    while rem:
        if rem & 1:
            m = obj_masks_red[oi]
            if m & used == 0:
                lb += 1
                used |= m
        rem >>= 1
        oi += 1
    return lb


def exact_min_hitting_set(inst):
    """Minimum-cardinality subset of the candidates hitting every object."""
    if not inst.objects:
        return []
    obj_masks = _incidence(inst)
    n_cand = len(inst.candidates)
    kept_cand, kept_covers, forced, n_obj = _reduce(obj_masks, n_cand)

    if not kept_covers:
        return [inst.candidates[ci] for ci in forced]

    # object masks over reduced candidates
    red_obj_masks = [0] * n_obj
    for cand_i, cover in enumerate(kept_covers):
        for oi in range(n_obj):
            if cover & (1 << oi):
                red_obj_masks[oi] |= 1 << cand_i
    all_objs = (1 << n_obj) - 1

    greedy = _greedy_cover(kept_covers, all_objs)
    best = {"size": len(greedy), "sol": list(greedy)}

    cand_order_by_obj = [
        sorted(
            (ci for ci in range(len(kept_covers)) if red_obj_masks[oi] & (1 << ci)),
            key=lambda ci: -kept_covers[ci].bit_count(),
        )
        for oi in range(n_obj)
    ]

    def branch(remaining, chosen):
        if remaining == 0:
            if len(chosen) < best["size"]:
                best["size"] = len(chosen)
                best["sol"] = list(chosen)
            return
        lb = _disjoint_lower_bound(remaining, red_obj_masks)
        if len(chosen) + lb >= best["size"]:
            return
        # branch on the uncovered object with fewest usable candidates
        pick, pick_n = -1, math.inf
        rem = remaining
        oi = 0
        while rem:
            if rem & 1:
                n = red_obj_masks[oi].bit_count()
                if n < pick_n:
                    pick, pick_n = oi, n
            rem >>= 1
            oi += 1
        for ci in cand_order_by_obj[pick]:
            chosen.append(ci)
            branch(remaining & ~kept_covers[ci], chosen)
            chosen.pop()

    branch(all_objs, [])
    points = [inst.candidates[ci] for ci in forced]
    points.extend(inst.candidates[kept_cand[ci]] for ci in best["sol"])
    return sorted(points)


def optimum_size(objects, candidates):
    """Size of an exact optimum; raises InfeasibleInstance when one exists."""
    sol = exact_min_hitting_set(HitInstance.from_objects(objects, candidates))
    for i, obj in enumerate(objects):
        if not any(object_contains(obj, p) for p in sol):
            raise InfeasibleInstance(f"solver output misses object {i}")
    return len(sol)
