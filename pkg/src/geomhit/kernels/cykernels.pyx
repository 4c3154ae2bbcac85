# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython geometric kernels; same contracts as pykernels."""

from libc.math cimport sqrt, acos, INFINITY, fabs

BACKEND = "cython"


def polygon_margin(double[:, ::1] verts, double x, double y):
    cdef Py_ssize_t k = verts.shape[0]
    cdef Py_ssize_t i, j
    cdef double best = INFINITY
    cdef double x1, y1, x2, y2, ex, ey, cross, d
    for i in range(k):
        j = i + 1
        if j == k:
            j = 0
        x1 = verts[i, 0]
        y1 = verts[i, 1]
        x2 = verts[j, 0]
        y2 = verts[j, 1]
        ex = x2 - x1
        ey = y2 - y1
        cross = ex * (y - y1) - ey * (x - x1)
        d = cross / sqrt(ex * ex + ey * ey)
        if d < best:
            best = d
    return best


def polygon_margin_many(double[:, ::1] verts, double[:, ::1] pts):
    import numpy as np
    cdef Py_ssize_t k = verts.shape[0]
    cdef Py_ssize_t n = pts.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j, m
    cdef double best, x1, y1, ex, ey, cross, d, x, y
    cdef double[64] lens
    cdef double[128] edges
    if k > 64:
        raise ValueError("polygon too large for kernel")
    for i in range(k):
        j = i + 1
        if j == k:
            j = 0
        edges[2 * i] = verts[j, 0] - verts[i, 0]
        edges[2 * i + 1] = verts[j, 1] - verts[i, 1]
        lens[i] = sqrt(edges[2 * i] * edges[2 * i] + edges[2 * i + 1] * edges[2 * i + 1])
    for m in range(n):
        x = pts[m, 0]
        y = pts[m, 1]
        best = INFINITY
        for i in range(k):
            ex = edges[2 * i]
            ey = edges[2 * i + 1]
            x1 = verts[i, 0]
            y1 = verts[i, 1]
            cross = ex * (y - y1) - ey * (x - x1)
            d = cross / lens[i]
            if d < best:
                best = d
        out[m] = best
    return out_arr


def convex_scale(double[:, ::1] norms, double[::1] offs, double vx, double vy):
    if vx == 0.0 and vy == 0.0:
        return 0.0
    cdef Py_ssize_t k = norms.shape[0]
    cdef Py_ssize_t i
    cdef double best = INFINITY
    cdef double dot, s
    for i in range(k):
        dot = norms[i, 0] * vx + norms[i, 1] * vy
        if dot > 0.0:
            s = offs[i] / dot
            if s < best:
                best = s
    return 1.0 / best


def clip_segment(double[:, ::1] norms, double[::1] offs, double cx, double cy,
                 double ax, double ay, double bx, double by):
    cdef double t0 = 0.0
    cdef double t1 = 1.0
    cdef double dx = bx - ax
    cdef double dy = by - ay
    cdef double px = ax - cx
    cdef double py = ay - cy
    cdef Py_ssize_t k = norms.shape[0]
    cdef Py_ssize_t i
    cdef double nx, ny, num, den, t
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


def seg_seg(double ax, double ay, double bx, double by,
            double cx, double cy, double dx, double dy, double eps):
    cdef double rx = bx - ax
    cdef double ry = by - ay
    cdef double sx = dx - cx
    cdef double sy = dy - cy
    cdef double denom = rx * sy - ry * sx
    cdef double qpx = cx - ax
    cdef double qpy = cy - ay
    cdef double rlen = sqrt(rx * rx + ry * ry)
    cdef double slen = sqrt(sx * sx + sy * sy)
    cdef double scale = rlen * slen
    cdef double rr, t_c, t_d, lo, hi, x1, y1, x2, y2, t, u, mx
    if scale == 0.0:
        return (0, 0.0, 0.0, 0.0, 0.0)
    if fabs(denom) <= eps * scale:
        mx = rlen if rlen > slen else slen
        if fabs(qpx * ry - qpy * rx) > eps * mx * rlen:
            return (0, 0.0, 0.0, 0.0, 0.0)
        rr = rx * rx + ry * ry
        t_c = (qpx * rx + qpy * ry) / rr
        t_d = ((dx - ax) * rx + (dy - ay) * ry) / rr
        lo = t_c if t_c < t_d else t_d
        hi = t_c if t_c > t_d else t_d
        if lo < 0.0:
            lo = 0.0
        if hi > 1.0:
            hi = 1.0
        if lo > hi + eps:
            return (0, 0.0, 0.0, 0.0, 0.0)
        x1 = ax + lo * rx
        y1 = ay + lo * ry
        x2 = ax + hi * rx
        y2 = ay + hi * ry
        mx = rlen if rlen > 1.0 else 1.0
        if sqrt((x2 - x1) * (x2 - x1) + (y2 - y1) * (y2 - y1)) <= eps * mx:
            return (1, x1, y1, 0.0, 0.0)
        return (2, x1, y1, x2, y2)
    t = (qpx * sy - qpy * sx) / denom
    u = (qpx * ry - qpy * rx) / denom
    if -eps <= t <= 1.0 + eps and -eps <= u <= 1.0 + eps:
        return (1, ax + t * rx, ay + t * ry, 0.0, 0.0)
    return (0, 0.0, 0.0, 0.0, 0.0)


def angle_at(double px, double py, double ax, double ay, double bx, double by):
    cdef double ux = ax - px
    cdef double uy = ay - py
    cdef double vx = bx - px
    cdef double vy = by - py
    cdef double nu = sqrt(ux * ux + uy * uy)
    cdef double nv = sqrt(vx * vx + vy * vy)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("angle_at: zero-length leg")
    cdef double c = (ux * vx + uy * vy) / (nu * nv)
    if c > 1.0:
        c = 1.0
    elif c < -1.0:
        c = -1.0
    return acos(c)


def polygon_box_overlap(double[:, ::1] verts, double xlo, double ylo,
                        double xhi, double yhi):
    cdef Py_ssize_t k = verts.shape[0]
    cdef Py_ssize_t i, j
    cdef double pxlo = INFINITY
    cdef double pxhi = -INFINITY
    cdef double pylo = INFINITY
    cdef double pyhi = -INFINITY
    cdef double vx, vy, x1, y1, x2, y2, nx, ny, pmax, bmin, b1, b2
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
        j = i + 1
        if j == k:
            j = 0
        x1 = verts[i, 0]
        y1 = verts[i, 1]
        x2 = verts[j, 0]
        y2 = verts[j, 1]
        nx = y2 - y1
        ny = x1 - x2
        pmax = nx * x1 + ny * y1
        b1 = nx * xlo if nx * xlo < nx * xhi else nx * xhi
        b2 = ny * ylo if ny * ylo < ny * yhi else ny * yhi
        bmin = b1 + b2
        if bmin > pmax:
            return False
    return True


def linf(p, q):
    cdef double best = 0.0
    cdef double d
    for a, b in zip(p, q):
        d = fabs(a - b)
        if d > best:
            best = d
    return best
