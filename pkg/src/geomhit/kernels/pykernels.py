"""Pure-Python geometric kernels.

Reference implementations of the hot predicates; the Cython module
``cykernels`` mirrors these signatures exactly.  Polygons are numpy arrays
of shape (k, 2) with vertices in counter-clockwise order.
"""

import math

import numpy as np

BACKEND = "python"


def polygon_margin(verts, x, y):
    """Signed distance from (x, y) to the polygon boundary.

    Positive inside, negative outside, ~0 on the boundary.  The value is
    min over edges of the perpendicular distance to the edge line, which
    for convex CCW polygons is the exact signed Euclidean clearance.
    """
    k = verts.shape[0]
    best = math.inf
    for i in range(k):
        x1 = verts[i, 0]
        y1 = verts[i, 1]
        x2 = verts[(i + 1) % k, 0]
        y2 = verts[(i + 1) % k, 1]
        ex = x2 - x1
        ey = y2 - y1
        cross = ex * (y - y1) - ey * (x - x1)
        d = cross / math.sqrt(ex * ex + ey * ey)
        if d < best:
            best = d
    return best


def polygon_margin_many(verts, pts):
    """Vectorized polygon_margin for an (n, 2) array of points."""
    a = verts
    b = np.roll(verts, -1, axis=0)
    e = b - a
    lengths = np.sqrt(e[:, 0] * e[:, 0] + e[:, 1] * e[:, 1])
    # cross of edge with (pt - a), per edge per point
    dx = pts[:, None, 0] - a[None, :, 0]
    dy = pts[:, None, 1] - a[None, :, 1]
    cross = e[None, :, 0] * dy - e[None, :, 1] * dx
    return (cross / lengths[None, :]).min(axis=1)


def convex_scale(norms, offs, vx, vy):
    """Convex-distance scaling for displacement (vx, vy).

    ``norms``/``offs`` are the outward edge normals and offsets of the
    polygon relative to its designated center (n . (p - c) <= b, b > 0).
    Returns the factor by which the polygon must be scaled about its
    center so its boundary passes through center + (vx, vy); 0 for the
    zero displacement.
    """
    if vx == 0.0 and vy == 0.0:
        return 0.0
    best = math.inf
    k = norms.shape[0]
    for i in range(k):
        dot = norms[i, 0] * vx + norms[i, 1] * vy
        if dot > 0.0:
            s = offs[i] / dot
            if s < best:
                best = s
    # center interior to a bounded convex polygon guarantees best < inf
    return 1.0 / best


def clip_segment(norms, offs, cx, cy, ax, ay, bx, by):
    """Clip segment a-b against the polygon (norms, offs) centered at (cx, cy).

    Returns (t0, t1) parameters along a+t*(b-a) of the inside portion;
    t0 > t1 means no intersection.
    """
    t0 = 0.0
    t1 = 1.0
    dx = bx - ax
    dy = by - ay
    px = ax - cx
    py = ay - cy
    k = norms.shape[0]
    for i in range(k):
        nx = norms[i, 0]
        ny = norms[i, 1]
        num = offs[i] - (nx * px + ny * py)
        den = nx * dx + ny * dy
        if den == 0.0:
            if num < 0.0:
                return (1.0, 0.0)
        elif den > 0.0:
            t = num / den
            if t < t1:
                t1 = t
        else:
            t = num / den
            if t > t0:
                t0 = t
        if t0 > t1:
            return (1.0, 0.0)
    return (t0, t1)


def seg_seg(ax, ay, bx, by, cx, cy, dx, dy, eps):
    """Intersection of segments a-b and c-d.

    Returns (code, x1, y1, x2, y2): code 0 = disjoint, 1 = single point
    (x1, y1), 2 = collinear overlap from (x1, y1) to (x2, y2).
    """
    rx = bx - ax
    ry = by - ay
    sx = dx - cx
    sy = dy - cy
    denom = rx * sy - ry * sx
    qpx = cx - ax
    qpy = cy - ay
    rlen = math.sqrt(rx * rx + ry * ry)
    slen = math.sqrt(sx * sx + sy * sy)
    scale = rlen * slen
    if scale == 0.0:
        return (0, 0.0, 0.0, 0.0, 0.0)
    if abs(denom) <= eps * scale:
        # parallel; collinear iff c is on line a-b
        if abs(qpx * ry - qpy * rx) > eps * max(rlen, slen) * rlen:
            return (0, 0.0, 0.0, 0.0, 0.0)
        rr = rx * rx + ry * ry
        t_c = (qpx * rx + qpy * ry) / rr
        t_d = ((dx - ax) * rx + (dy - ay) * ry) / rr
        lo = max(0.0, min(t_c, t_d))
        hi = min(1.0, max(t_c, t_d))
        if lo > hi + eps:
            return (0, 0.0, 0.0, 0.0, 0.0)
        x1 = ax + lo * rx
        y1 = ay + lo * ry
        x2 = ax + hi * rx
        y2 = ay + hi * ry
        dx12 = x2 - x1
        dy12 = y2 - y1
        if math.sqrt(dx12 * dx12 + dy12 * dy12) <= eps * max(rlen, 1.0):
            return (1, x1, y1, 0.0, 0.0)
        return (2, x1, y1, x2, y2)
    t = (qpx * sy - qpy * sx) / denom
    u = (qpx * ry - qpy * rx) / denom
    tol = eps
    if -tol <= t <= 1.0 + tol and -tol <= u <= 1.0 + tol:
        return (1, ax + t * rx, ay + t * ry, 0.0, 0.0)
    return (0, 0.0, 0.0, 0.0, 0.0)


def angle_at(px, py, ax, ay, bx, by):
    """Interior angle a-p-b in [0, pi] via the clamped dot product."""
    ux = ax - px
    uy = ay - py
    vx = bx - px
    vy = by - py
    nu = math.sqrt(ux * ux + uy * uy)
    nv = math.sqrt(vx * vx + vy * vy)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("angle_at: zero-length leg")
    c = (ux * vx + uy * vy) / (nu * nv)
    if c > 1.0:
        c = 1.0
    elif c < -1.0:
        c = -1.0
    return math.acos(c)


def polygon_box_overlap(verts, xlo, ylo, xhi, yhi):
    """Closed intersection test between a convex CCW polygon and an axis box.

    Separating-axis test over the box axes and the polygon edge normals.
    """
    k = verts.shape[0]
    pxlo = math.inf
    pxhi = -math.inf
    pylo = math.inf
    pyhi = -math.inf
    for i in range(k):
        vx = verts[i, 0]
        vy = verts[i, 1]
        if vx < pxlo:
            pxlo = vx
        if vx > pxhi:
            pxhi = vx
        if vy < pylo:
            pylo = vy
        if vy > pyhi:
            pyhi = vy
    if pxhi < xlo or pxlo > xhi or pyhi < ylo or pylo > yhi:
        return False
    for i in range(k):
        x1 = verts[i, 0]
        y1 = verts[i, 1]
        x2 = verts[(i + 1) % k, 0]
        y2 = verts[(i + 1) % k, 1]
        # outward normal of CCW edge
        nx = y2 - y1
        ny = x1 - x2
        # polygon's projection max along n is at this edge: n . v1
        pmax = nx * x1 + ny * y1
        bmin = min(nx * xlo, nx * xhi) + min(ny * ylo, ny * yhi)
        if bmin > pmax:
            return False
    return True


def linf(p, q):
    """L-infinity distance between two coordinate sequences."""
    best = 0.0
    for a, b in zip(p, q):
        d = abs(a - b)
        if d > best:
            best = d
    return best
