"""Core geometric types and predicates.

Points are plain tuples of floats.  Objects are immutable dataclasses;
all predicates take a global tolerance EPS = 1e-9 suited to desk-scale
coordinates (no exact arithmetic kernel).
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .errors import DimensionMismatch, GeomHitError

EPS = 1e-9

Point = tuple


def as_point(coords):
    p = tuple(float(c) for c in coords)
    if len(p) < 1:
        raise GeomHitError("point needs at least one coordinate")
    if not all(math.isfinite(c) for c in p):
        raise GeomHitError("point coordinates must be finite")
    return p


def linf_distance(p, q):
    """L-infinity distance max_j |p_j - q_j|."""
    if len(p) != len(q):
        raise DimensionMismatch(f"dimension {len(p)} vs {len(q)}")
    return kernels.linf(p, q)


@dataclass(frozen=True)
class AxisHypercube:
    """Axis-aligned hypercube; ``width`` is half the side length."""

    center: tuple
    width: float
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not self.width > 0:
            raise GeomHitError("hypercube width must be positive")

    @property
    def dim(self):
        return len(self.center)

    @property
    def side(self):
        return 2.0 * self.width

    def bounds(self):
        """Per-axis (lo, hi) pairs."""
        return [(c - self.width, c + self.width) for c in self.center]

    def contains(self, p, eps=EPS):
        if len(p) != self.dim:
            raise DimensionMismatch(f"dimension {len(p)} vs {self.dim}")
        d = kernels.linf(p, self.center)
        if self.closed:
            return d <= self.width + eps
        return d < self.width - eps


def hypercube_contains(h, p, eps=EPS):
    """Containment respecting the cube's closed flag."""
    return h.contains(p, eps=eps)


def kgon_metrics(k, r_out):
    """Inradius and side length of a regular k-gon with circumradius r_out."""
    r_in = r_out * math.cos(math.pi / k)
    side = 2.0 * r_out * math.sin(math.pi / k)
    return r_in, side


def canonical_vertex_angles(k):
    """Vertex angles of the canonical orientation, counter-clockwise.

    Vertex 0 sits at pi/2 (apex up), except k = 4 where the square is
    axis-aligned (vertex 0 at pi/4): the apex-up square is the L1 ball,
    which cannot always cover a super-square quadrant center, breaking
    the tile machinery that the square constants were derived for.
    """
    base = math.pi / 4 if k == 4 else math.pi / 2
    return [base + 2.0 * math.pi * m / k for m in range(k)]


@dataclass(frozen=True)
class RegularKGon:
    """Regular k-gon (k >= 4) in canonical orientation.

    ``circumradius`` is the radius of the smallest enclosing disk, so the
    diameter of the k-gon equals 2 * circumradius.
    """

    k: int
    center: tuple
    circumradius: float
    _angles: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 4:
            raise GeomHitError("regular k-gon requires k >= 4")
        object.__setattr__(self, "center", as_point(self.center))
        if len(self.center) != 2:
            raise DimensionMismatch("k-gons live in the plane")
        if not self.circumradius > 0:
            raise GeomHitError("circumradius must be positive")
        if self._angles is None:
            object.__setattr__(self, "_angles", tuple(canonical_vertex_angles(self.k)))

    @property
    def diameter(self):
        return 2.0 * self.circumradius

    @cached_property
    def vertices(self):
        cx, cy = self.center
        r = self.circumradius
        return np.array(
            [(cx + r * math.cos(a), cy + r * math.sin(a)) for a in self._angles],
            dtype=np.float64,
        )

    @cached_property
    def edge_normals(self):
        """(norms, offsets) with n . (p - center) <= b describing the polygon."""
        v = self.vertices
        e = np.roll(v, -1, axis=0) - v
        norms = np.stack([e[:, 1], -e[:, 0]], axis=1)
        norms /= np.hypot(norms[:, 0], norms[:, 1])[:, None]
        offs = norms[:, 0] * (v[:, 0] - self.center[0]) + norms[:, 1] * (v[:, 1] - self.center[1])
        return np.ascontiguousarray(norms), np.ascontiguousarray(offs)

    def margin(self, p):
        """Signed Euclidean clearance of p from the boundary (positive inside)."""
        return kernels.polygon_margin(self.vertices, p[0], p[1])

    def contains(self, p, eps=EPS, closed=True):
        m = self.margin(p)
        return m >= -eps if closed else m > eps

    def contains_many(self, pts, eps=EPS):
        """Closed containment for an (n, 2) float array; returns a bool array."""
        pts = np.ascontiguousarray(pts, dtype=np.float64)
        return np.asarray(kernels.polygon_margin_many(self.vertices, pts)) >= -eps

    def translate(self, new_center):
        return RegularKGon(self.k, new_center, self.circumradius, _angles=self._angles)

    def scaled_about(self, anchor, ratio):
        """Homothet with the given ratio about an anchor point."""
        ax, ay = anchor
        cx, cy = self.center
        nc = (ax + ratio * (cx - ax), ay + ratio * (cy - ay))
        return RegularKGon(self.k, nc, self.circumradius * ratio, _angles=self._angles)


def reflect_through_origin(poly, new_center=None):
    """Reflection of a k-gon through its designated center.

    Vertices map to their antipodes relative to the center; the result is
    re-centered at ``new_center`` (default: the original center).
    """
    target = poly.center if new_center is None else as_point(new_center)
    angles = tuple((a + math.pi) % (2.0 * math.pi) for a in poly._angles)
    return RegularKGon(poly.k, target, poly.circumradius, _angles=angles)


@dataclass(frozen=True)
class FatObject:
    """Object with bounded L-infinity aspect ratio about its center.

    ``width``/``height`` are the min/max L-infinity distances from the
    center to the boundary and alpha = width / height.  ``membership`` is
    the closed containment predicate.
    """

    center: tuple
    width: float
    height: float
    membership: object
    label: str = "custom"
    params: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "params", tuple(self.params))
        if not (0 < self.width <= self.height):
            raise GeomHitError("fat object needs 0 < width <= height")

    @property
    def dim(self):
        return len(self.center)

    @property
    def alpha(self):
        return self.width / self.height

    def contains(self, p):
        return bool(self.membership(p))


def fat_linf_ball(center, width):
    """Hypercube as a fat object: alpha = 1."""
    c = as_point(center)
    w = float(width)

    def member(p):
        return kernels.linf(p, c) <= w + EPS

    return FatObject(c, w, w, member, label="linf_ball", params=(w,))


def fat_l2_ball(center, radius):
    """Euclidean ball: width = radius/sqrt(d), height = radius, alpha = 1/sqrt(d).

    The min L-infinity center-to-boundary distance of a radius-r sphere is
    attained along the main diagonal (r/sqrt(d)); the max along an axis (r).
    """
    c = as_point(center)
    r = float(radius)
    d = len(c)

    def member(p):
        return math.dist(p, c) <= r + EPS

    return FatObject(c, r / math.sqrt(d), r, member, label="l2_ball", params=(r,))


def fat_box(center, half_extents):
    """Axis-aligned box: width = min half-extent, height = max half-extent."""
    c = as_point(center)
    h = tuple(float(x) for x in half_extents)
    if len(h) != len(c):
        raise DimensionMismatch("half_extents dimension mismatch")

    def member(p):
        return all(abs(a - b) <= e + EPS for a, b, e in zip(p, c, h))

    return FatObject(c, min(h), max(h), member, label="box", params=h)


@dataclass(frozen=True)
class BoundaryComponent:
    """One maximal connected piece of the intersection of two boundaries."""

    polyline: tuple

    def __post_init__(self):
        if not self.polyline:
            raise GeomHitError("boundary component cannot be empty")

    def sample(self, rng):
        """Random point on the component."""
        pts = self.polyline
        if len(pts) == 1:
            return pts[0]
        i = int(rng.integers(len(pts) - 1))
        t = float(rng.random())
        a, b = pts[i], pts[i + 1]
        return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def convex_distance(poly, x, y):
    """Convex distance d_C(x, y) induced by a centered convex polygon.

    Returns the scale at which a homothet of ``poly`` centered at x has y
    on its boundary; 0 iff x == y.
    """
    norms, offs = poly.edge_normals
    return kernels.convex_scale(norms, offs, y[0] - x[0], y[1] - x[1])


def angle_at(p, x, y):
    """Interior angle x-p-y in [0, pi]."""
    return kernels.angle_at(p[0], p[1], x[0], x[1], y[0], y[1])


def _cluster_points(prims, eps):
    """Union-find clustering of primitives whose point sets come within eps."""
    n = len(prims)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for i in range(n):
        for j in range(i + 1, n):
            close = False
            for pi in prims[i]:
                for pj in prims[j]:
                    if math.hypot(pi[0] - pj[0], pi[1] - pj[1]) <= eps:
                        close = True
                        break
                if close:
                    break
            if close:
                union(i, j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def boundary_intersection_components(a, b, eps=EPS):
    """Connected components of the intersection of two k-gon boundaries.

    Both polygons must be translates of the same k-gon.  Each component is
    returned as a polyline; isolated crossings appear as one-point
    components, shared parallel edges as segments.  Distinct interior-
    intersecting translates of a convex body produce 0 or 2 components.
    """
    if a.k != b.k or abs(a.circumradius - b.circumradius) > eps:
        raise GeomHitError("boundary components require translates of one k-gon")
    if linf_distance(a.center, b.center) <= eps:
        raise GeomHitError("coincident copies have no well-defined components")
    va, vb = a.vertices, b.vertices
    k = a.k
    prims = []
    for i in range(k):
        a1 = va[i]
        a2 = va[(i + 1) % k]
        for j in range(k):
            b1 = vb[j]
            b2 = vb[(j + 1) % k]
            code, x1, y1, x2, y2 = kernels.seg_seg(
                a1[0], a1[1], a2[0], a2[1], b1[0], b1[1], b2[0], b2[1], eps
            )
            if code == 1:
                prims.append(((x1, y1),))
            elif code == 2:
                prims.append(((x1, y1), (x2, y2)))
    if not prims:
        return []
    cluster_eps = max(eps, 1e-7 * a.circumradius)
    comps = []
    cx, cy = a.center
    for group in _cluster_points(prims, cluster_eps):
        pts = []
        for gi in group:
            pts.extend(prims[gi])
        # order along the boundary arc by angle about a's center, dedup
        pts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
        kept = []
        for p in pts:
            if not kept or math.hypot(p[0] - kept[-1][0], p[1] - kept[-1][1]) > cluster_eps:
                kept.append(p)
        if not kept:
            kept = [pts[0]]
        comps.append(BoundaryComponent(tuple(kept)))
    comps.sort(key=lambda c: (c.polyline[0][0], c.polyline[0][1]))
    return comps


def clip_convex_polygons(a, b):
    """Vertices of the (possibly empty) intersection polygon of two k-gons."""
    subject = [tuple(v) for v in a.vertices]
    norms, offs = b.edge_normals
    bx, by = b.center
    for i in range(len(offs)):
        nx, ny = norms[i]
        off = offs[i]
        out = []
        m = len(subject)
        if m == 0:
            break
        for j in range(m):
            cur = subject[j]
            nxt = subject[(j + 1) % m]
            c_in = nx * (cur[0] - bx) + ny * (cur[1] - by) <= off
            n_in = nx * (nxt[0] - bx) + ny * (nxt[1] - by) <= off
            if c_in:
                out.append(cur)
            if c_in != n_in:
                dcur = nx * (cur[0] - bx) + ny * (cur[1] - by) - off
                dnxt = nx * (nxt[0] - bx) + ny * (nxt[1] - by) - off
                t = dcur / (dcur - dnxt)
                out.append(
                    (cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1]))
                )
        subject = out
    return subject


def polygon_area(verts):
    area = 0.0
    m = len(verts)
    for i in range(m):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % m]
        area += x1 * y2 - x2 * y1
    return 0.5 * area


def sample_in_polygon(verts, rng):
    """Uniform point in a convex polygon via an area-weighted triangle fan."""
    m = len(verts)
    if m == 1:
        return verts[0]
    if m == 2:
        t = float(rng.random())
        a, b = verts
        return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
    areas = []
    for i in range(1, m - 1):
        ax, ay = verts[0]
        bx, by = verts[i]
        cx, cy = verts[i + 1]
        areas.append(abs((bx - ax) * (cy - ay) - (cx - ax) * (by - ay)) / 2.0)
    total = sum(areas)
    if total == 0.0:
        return verts[0]
    u = float(rng.random()) * total
    acc = 0.0
    idx = 1
    for i, s in enumerate(areas, start=1):
        acc += s
        if u <= acc:
            idx = i
            break
    r1 = math.sqrt(float(rng.random()))
    r2 = float(rng.random())
    ax, ay = verts[0]
    bx, by = verts[idx]
    cx, cy = verts[idx + 1]
    x = (1 - r1) * ax + r1 * (1 - r2) * bx + r1 * r2 * cx
    y = (1 - r1) * ay + r1 * (1 - r2) * by + r1 * r2 * cy
    return (x, y)
