"""Online hitting of homothetic regular k-gons with a known finite point set.

Translates are handled by a deterministic scheme: partition the plane
into tiles, classify each arriving translate by the first super-square
quadrant center it covers, and stab it with the highest-ranked extreme
point it contains.  Homothets are reduced to translates per size layer
through shrunk sets presented in random order.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import GeomHitError, InvariantViolation
from .geometry import EPS, RegularKGon, reflect_through_origin
from .fat_online import width_layer


def prototype_constants(k):
    """(tile side, super-square side, max intersected tiles) for diameter 2."""
    if k < 4:
        raise GeomHitError("regular k-gon requires k >= 4")
    if k == 4:
        return (0.5, 2.5, 25)
    if k in (5, 6):
        return (0.25, 2.25, 63)
    return (0.5, 2.5, 23)


@dataclass(frozen=True)
class TilePartition:
    """Axis-aligned grid of square tiles; offset keeps every input point
    strictly interior to a tile."""

    side: float
    offset: tuple

    def tile_of(self, p):
        return (
            math.floor((p[0] - self.offset[0]) / self.side),
            math.floor((p[1] - self.offset[1]) / self.side),
        )

    def tile_bounds(self, tid):
        x0 = self.offset[0] + tid[0] * self.side
        y0 = self.offset[1] + tid[1] * self.side
        return (x0, y0, x0 + self.side, y0 + self.side)

    def tile_center(self, tid):
        x0, y0, x1, y1 = self.tile_bounds(tid)
        return ((x0 + x1) / 2.0, (y0 + y1) / 2.0)

    def interior_clearance(self, p):
        """Distance from p to the nearest grid line."""
        out = math.inf
        for c, o in zip(p, self.offset):
            f = (c - o) / self.side
            f -= math.floor(f)
            out = min(out, f * self.side, (1.0 - f) * self.side)
        return out


def _axis_offset(coords, side):
    """Grid offset along one axis placing all coords away from grid lines."""
    fracs = sorted({(c / side) % 1.0 for c in coords})
    if not fracs:
        return 0.0
    tol = 1e-7
    if all(tol < f < 1.0 - tol for f in fracs):
        return 0.0
    # midpoint of the largest circular gap between fractional parts
    best_gap, best_mid = -1.0, 0.0
    for i, f in enumerate(fracs):
        nxt = fracs[(i + 1) % len(fracs)] + (1.0 if i + 1 == len(fracs) else 0.0)
        gap = nxt - f
        if gap > best_gap:
            best_gap, best_mid = gap, (f + gap / 2.0) % 1.0
    return best_mid * side


def build_partition(proto, pts):
    """Tile partition for the prototype's size class covering the points."""
    ell, _, _ = prototype_constants(proto.k)
    side = ell * (proto.diameter / 2.0)
    ox = _axis_offset([p[0] for p in pts], side)
    oy = _axis_offset([p[1] for p in pts], side)
    part = TilePartition(side, (ox, oy))
    for p in pts:
        if part.interior_clearance(p) <= 1e-9 * side:
            raise InvariantViolation("input point on a tile boundary")
    return part


def quadrant_centers(partition, tid, super_side):
    """Centers o_1..o_4 (NW, NE, SW, SE) of the super-square's quadrants."""
    cx, cy = partition.tile_center(tid)
    q = super_side / 4.0
    return (
        (cx - q, cy + q),
        (cx + q, cy + q),
        (cx - q, cy - q),
        (cx + q, cy - q),
    )


def tile_cone(partition, tid, apex):
    """Angular window of the tile as seen from an apex outside it."""
    x0, y0, x1, y1 = partition.tile_bounds(tid)
    corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    angles = [math.atan2(cy - apex[1], cx - apex[0]) for cx, cy in corners]
    lo, hi = min(angles), max(angles)
    if hi - lo > math.pi:  # window straddles the atan2 branch cut
        angles = [a + 2.0 * math.pi if a < 0 else a for a in angles]
        lo, hi = min(angles), max(angles)
    return lo, hi


def point_in_cone(partition, tid, apex, p, slack=1e-9):
    lo, hi = tile_cone(partition, tid, apex)
    a = math.atan2(p[1] - apex[1], p[0] - apex[0])
    for cand in (a, a + 2.0 * math.pi, a - 2.0 * math.pi):
        if lo - slack <= cand <= hi + slack:
            return True
    return False


def type_of(kg, partition, tid, super_side):
    """Smallest quadrant index whose center lies in the translate."""
    for tau, o in enumerate(quadrant_centers(partition, tid, super_side), start=1):
        if kg.contains(o):
            return tau
    raise InvariantViolation(
        "translate meets the tile but covers no quadrant center"
    )


@dataclass(frozen=True)
class ExtremeTable:
    """Extreme points of one (tile, type) pair, ordered by angle about the
    quadrant center, with a path vertex ranking over that order."""

    points: tuple  # point tuples in theta order
    thetas: tuple
    colors: tuple

    def __len__(self):
        return len(self.points)


def vertex_ranking(n):
    """Ranking of the n-vertex path: position i (1-based) gets the 2-adic
    valuation of i plus one.  Any two equal colors c sit astride a multiple
    of 2^c, whose color exceeds c; max color is floor(log2 (2n))."""
    colors = []
    for i in range(1, n + 1):
        v = 1
        while i % (1 << v) == 0:
            v += 1
        colors.append(v)
    return colors


def _reflected_geometry(proto):
    refl = reflect_through_origin(proto)
    rel = refl.vertices - np.asarray(proto.center)
    norms, offs = refl.edge_normals
    return np.ascontiguousarray(rel), norms, offs


def extreme_points(tile_pts, o_tau, proto, strict_eps=1e-9):
    """Extreme points among the tile's points for one quadrant center.

    A point p qualifies iff some arc of the reflected prototype's boundary
    at p lies inside the reflected prototype at o_tau while strictly
    avoiding the reflected prototypes at all other tile points: centers on
    that arc are exactly the translates that cover o_tau, touch p, and
    contain no other tile point.
    """
    rel, norms, offs = _reflected_geometry(proto)
    k = rel.shape[0]
    result = []
    for p in tile_pts:
        others = [q for q in tile_pts if q != p]
        found = False
        for e in range(k):
            ax = p[0] + rel[e, 0]
            ay = p[1] + rel[e, 1]
            bx = p[0] + rel[(e + 1) % k, 0]
            by = p[1] + rel[(e + 1) % k, 1]
            t0, t1 = kernels.clip_segment(
                norms, offs, o_tau[0], o_tau[1], ax, ay, bx, by
            )
            if t0 > t1:
                continue
            cuts = {t0, t1}
            for q in others:
                c0, c1 = kernels.clip_segment(norms, offs, q[0], q[1], ax, ay, bx, by)
                if c0 <= c1:
                    for c in (c0, c1):
                        if t0 < c < t1:
                            cuts.add(c)
            ts = sorted(cuts)
            for lo, hi in zip(ts, ts[1:]):
                tm = (lo + hi) / 2.0
                mx = ax + tm * (bx - ax)
                my = ay + tm * (by - ay)
                ok = True
                for q in others:
                    dxy = np.array([mx - q[0], my - q[1]])
                    clearance = float(np.min(offs - norms @ dxy))
                    if clearance >= -strict_eps:
                        ok = False
                        break
                if ok:
                    found = True
                    break
            if found:
                break
        if found:
            result.append(p)
    if not result:
        return ExtremeTable((), (), ())
    raw = [math.atan2(p[1] - o_tau[1], p[0] - o_tau[0]) % (2.0 * math.pi) for p in result]
    if max(raw) - min(raw) > math.pi:  # unwrap across 0/2pi
        raw = [a + 2.0 * math.pi if a < math.pi else a for a in raw]
    order = sorted(range(len(result)), key=lambda i: raw[i])
    pts = tuple(result[i] for i in order)
    thetas = tuple(raw[i] for i in order)
    return ExtremeTable(pts, thetas, tuple(vertex_ranking(len(pts))))


class EsState:
    """Deterministic hitting of translates of one prototype.

    Preprocessing builds the tile partition over the known point set and,
    for every occupied tile, the four extreme-point tables with their
    rankings.  The cone spanned by any tile from its quadrant centers is
    asserted to open less than pi/4, which is what limits same-type
    boundary crossings inside a tile.
    """

    def __init__(self, proto, points):
        self.proto = proto
        ell, t_sigma, m_sigma = prototype_constants(proto.k)
        scale = proto.diameter / 2.0
        self.super_side = t_sigma * scale
        self.m_sigma = m_sigma
        self.points = [tuple(map(float, p)) for p in points]
        if len(set(self.points)) != len(self.points):
            raise GeomHitError("duplicate input points are not supported")
        self.partition = build_partition(proto, self.points)
        self.tiles = {}
        for p in self.points:
            self.tiles.setdefault(self.partition.tile_of(p), []).append(p)
        self.tables = {}
        for tid, pts in self.tiles.items():
            for tau, o in enumerate(
                quadrant_centers(self.partition, tid, self.super_side), start=1
            ):
                lo, hi = tile_cone(self.partition, tid, o)
                if hi - lo >= math.pi / 4.0:
                    raise InvariantViolation("tile cone opens by >= pi/4")
                self.tables[(tid, tau)] = extreme_points(pts, o, proto)
        self.hitting = []
        self._hit_set = set()
        self._color_log = {}
        self.counters = {
            "observation3": 0,
            "extreme_nonempty": 0,
            "lemma16_pairs": 0,
            "step_cap": 0,
        }

    def is_hit(self, kg):
        return any(kg.contains(p) for p in self.hitting)

    def table(self, tid, tau):
        return self.tables[(tid, tau)]


def es_step(state, kg):
    """Present one translate; returns the points added to the hitting set.

    Translates containing no input point are ignored.
    """
    if kg.k != state.proto.k or abs(kg.diameter - state.proto.diameter) > 1e-9:
        raise GeomHitError("object is not a translate of the prototype")
    inside = [p for p in state.points if kg.contains(p)]
    if not inside:
        return []
    if state.is_hit(kg):
        return []
    by_tile = {}
    for p in inside:
        by_tile.setdefault(state.partition.tile_of(p), []).append(p)
    if len(by_tile) > state.m_sigma:
        raise InvariantViolation("translate meets more tiles than the class bound")
    state.counters["step_cap"] += 1
    added = []
    for tid in sorted(by_tile):
        tau = type_of(kg, state.partition, tid, state.super_side)
        state.counters["observation3"] += 1
        table = state.table(tid, tau)
        best = None
        for p, theta, color in zip(table.points, table.thetas, table.colors):
            if kg.contains(p) and (best is None or color > best[1]):
                best = (p, color)
        if best is None:
            raise InvariantViolation(
                "translate holds a tile point but no extreme point of its type"
            )
        state.counters["extreme_nonempty"] += 1
        tile_set = frozenset(by_tile[tid])
        log = state._color_log.setdefault((tid, tau), [])
        for prev_set, prev_color in log:
            if prev_set & tile_set:
                state.counters["lemma16_pairs"] += 1
                if prev_color == best[1]:
                    raise InvariantViolation(
                        "same-type translates sharing a tile point got one color"
                    )
        log.append((tile_set, best[1]))
        p = best[0]
        if p in state._hit_set:
            raise InvariantViolation("re-adding a hitting point to an unhit object")
        state.hitting.append(p)
        state._hit_set.add(p)
        added.append(p)
    return added


def shrunk_set(kg):
    """Power-of-two shrunk copies of a homothet: the object itself when its
    diameter is exactly 2^j, else one concentric copy plus one corner-anchored
    copy per vertex, all of diameter 2^j."""
    w = kg.diameter
    j = width_layer(w)
    target = 2.0**j
    if w == target:
        return [kg]
    ratio = target / w
    members = [RegularKGon(kg.k, kg.center, kg.circumradius * ratio, _angles=kg._angles)]
    for vx, vy in kg.vertices:
        members.append(kg.scaled_about((vx, vy), ratio))
    return members


def fisher_yates(items, rng):
    idx = list(range(len(items)))
    for i in range(len(idx) - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        idx[i], idx[j] = idx[j], idx[i]
    return [items[i] for i in idx]


class HhrState:
    """Layered randomized hitting of homothets via shrunk translates."""

    def __init__(self, k, points, max_diameter, seed):
        self.k = k
        self.points = [tuple(map(float, p)) for p in points]
        self.max_diameter = float(max_diameter)
        self.seed = seed
        self.rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(0xE5,)))
        )
        self.layers = {}
        self.presented = 0

    @property
    def hitting(self):
        out = []
        for es in self.layers.values():
            out.extend(es.hitting)
        return out

    @property
    def cost(self):
        return sum(len(es.hitting) for es in self.layers.values())

    def is_hit(self, kg):
        return any(kg.contains(p) for es in self.layers.values() for p in es.hitting)

    def layer_state(self, j):
        es = self.layers.get(j)
        if es is None:
            proto = RegularKGon(self.k, (0.0, 0.0), 2.0**j / 2.0)
            es = EsState(proto, self.points)
            self.layers[j] = es
        return es

    def counters(self):
        total = {}
        for es in self.layers.values():
            for name, n in es.counters.items():
                total[name] = total.get(name, 0) + n
        return total


def hhr_step(state, kg):
    """Present one homothet (diameter in [1, M]); returns points added."""
    w = kg.diameter
    if not (1.0 - EPS <= w <= state.max_diameter + EPS):
        raise GeomHitError(f"diameter {w} outside [1, {state.max_diameter}]")
    state.presented += 1
    if state.is_hit(kg):
        return []
    j = width_layer(w)
    es = state.layer_state(j)
    members = fisher_yates(shrunk_set(kg), state.rng)
    added = []
    for member in members:
        added.extend(es_step(es, member))
    return added


def count_intersected_tiles(partition, kg):
    """Number of tiles with nonempty closed intersection with the k-gon."""
    verts = kg.vertices
    xlo, ylo = verts.min(axis=0)
    xhi, yhi = verts.max(axis=0)
    ix0 = math.floor((xlo - partition.offset[0]) / partition.side)
    ix1 = math.floor((xhi - partition.offset[0]) / partition.side)
    iy0 = math.floor((ylo - partition.offset[1]) / partition.side)
    iy1 = math.floor((yhi - partition.offset[1]) / partition.side)
    n = 0
    for ix in range(ix0, ix1 + 1):
        for iy in range(iy0, iy1 + 1):
            x0, y0, x1, y1 = partition.tile_bounds((ix, iy))
            if kernels.polygon_box_overlap(verts, x0, y0, x1, y1):
                n += 1
    return n
