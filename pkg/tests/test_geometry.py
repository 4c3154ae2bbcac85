import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geomhit.errors import DimensionMismatch, GeomHitError
from geomhit.geometry import (
    AxisHypercube,
    RegularKGon,
    angle_at,
    boundary_intersection_components,
    clip_convex_polygons,
    convex_distance,
    fat_box,
    fat_l2_ball,
    fat_linf_ball,
    hypercube_contains,
    kgon_metrics,
    linf_distance,
    reflect_through_origin,
)

finite_coord = st.floats(-100, 100, allow_nan=False, allow_infinity=False)


class TestLinfDistance:
    def test_identity(self):
        assert linf_distance((0.0, 0.0), (0.0, 0.0)) == 0.0

    def test_hand_arithmetic(self):
        assert linf_distance((0.7, 3.3), (0.0, 4.0)) == pytest.approx(0.7)

    def test_componentwise_max(self):
        assert linf_distance((1, 2, 3), (4, 2, 1)) == 3

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            linf_distance((1.0,), (1.0, 2.0))

    @given(
        st.lists(finite_coord, min_size=1, max_size=5),
        st.lists(finite_coord, min_size=1, max_size=5),
        st.lists(finite_coord, min_size=1, max_size=5),
    )
    @settings(max_examples=200)
    def test_symmetry_and_triangle(self, a, b, c):
        n = min(len(a), len(b), len(c))
        a, b, c = tuple(a[:n]), tuple(b[:n]), tuple(c[:n])
        assert linf_distance(a, b) == linf_distance(b, a)
        assert linf_distance(a, c) <= linf_distance(a, b) + linf_distance(b, c) + 1e-12

    def test_symmetry_triangle_bulk(self):
        rng = np.random.Generator(np.random.PCG64(0))
        pts = rng.uniform(-50, 50, size=(10_000, 3, 4))
        d_ab = np.abs(pts[:, 0] - pts[:, 1]).max(axis=1)
        d_ba = np.abs(pts[:, 1] - pts[:, 0]).max(axis=1)
        d_ac = np.abs(pts[:, 0] - pts[:, 2]).max(axis=1)
        d_cb = np.abs(pts[:, 2] - pts[:, 1]).max(axis=1)
        assert np.array_equal(d_ab, d_ba)
        assert (d_ab <= d_ac + d_cb + 1e-12).all()


class TestHypercubeContains:
    def test_center_inside(self):
        h = AxisHypercube((0.0, 0.0), 1.0)
        assert hypercube_contains(h, (0.0, 0.0))

    def test_boundary_closed(self):
        h = AxisHypercube((0.0, 0.0), 1.0, closed=True)
        assert hypercube_contains(h, (1.0, 0.0))

    def test_boundary_open(self):
        h = AxisHypercube((0.0, 0.0), 1.0, closed=False)
        assert not hypercube_contains(h, (1.0, 0.0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            hypercube_contains(AxisHypercube((0.0,), 1.0), (0.0, 0.0))


def _axis_square_half_side_one():
    # canonical k=4 with circumradius sqrt(2) is the axis-aligned square
    # spanning [-1, 1]^2
    return RegularKGon(4, (0.0, 0.0), math.sqrt(2.0))


def _bisection_scale_oracle(poly, x, y, tol=1e-12):
    """Independent oracle: the scale at which a homothet of poly about x
    first contains y, found by bisection on containment."""
    if x == y:
        return 0.0
    lo, hi = 0.0, 1e-9

    def contains_at_scale(lmbda):
        if lmbda == 0:
            return False
        scaled = RegularKGon(poly.k, x, poly.circumradius * lmbda, _angles=poly._angles)
        return scaled.contains(y, eps=0.0)

    while not contains_at_scale(hi):
        hi *= 2.0
        if hi > 1e12:
            raise AssertionError("oracle failed to bracket")
    while hi - lo > tol * max(hi, 1.0):
        mid = (lo + hi) / 2.0
        if contains_at_scale(mid):
            hi = mid
        else:
            lo = mid
    return hi


class TestConvexDistance:
    def test_coincident(self):
        sq = _axis_square_half_side_one()
        assert convex_distance(sq, (3.0, 4.0), (3.0, 4.0)) == 0.0

    def test_axis_square_ray_oracle(self):
        sq = _axis_square_half_side_one()
        assert convex_distance(sq, (0.0, 0.0), (2.0, 0.0)) == pytest.approx(2.0)

    def test_against_bisection_oracle(self):
        rng = np.random.Generator(np.random.PCG64(1))
        for _ in range(50):
            k = int(rng.integers(4, 9))
            poly = RegularKGon(k, (0.0, 0.0), float(rng.uniform(0.5, 2.0)))
            x = (float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3)))
            y = (float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3)))
            got = convex_distance(poly, x, y)
            want = _bisection_scale_oracle(poly, x, y)
            assert got == pytest.approx(want, abs=1e-6)

    def test_reflection_identity(self):
        rng = np.random.Generator(np.random.PCG64(2))
        for _ in range(1000):
            k = int(rng.integers(4, 13))
            poly = RegularKGon(k, (0.0, 0.0), 1.0)
            refl = reflect_through_origin(poly)
            x = (float(rng.uniform(-5, 5)), float(rng.uniform(-5, 5)))
            y = (float(rng.uniform(-5, 5)), float(rng.uniform(-5, 5)))
            assert convex_distance(poly, x, y) == pytest.approx(
                convex_distance(refl, y, x), abs=1e-9
            )

    def test_scale_containment_equivalence(self):
        rng = np.random.Generator(np.random.PCG64(3))
        for _ in range(10_000):
            k = int(rng.integers(4, 9))
            poly = RegularKGon(k, (float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2))), 1.0)
            y = (float(rng.uniform(-4, 4)), float(rng.uniform(-4, 4)))
            dist = convex_distance(poly, poly.center, y)
            if abs(dist - 1.0) > 1e-9:
                assert (dist <= 1.0) == poly.contains(y)


class TestReflect:
    def test_square_same_shape(self):
        sq = RegularKGon(4, (1.0, 2.0), 1.0)
        refl = reflect_through_origin(sq)
        got = sorted(map(tuple, np.round(refl.vertices, 9)))
        want = sorted(map(tuple, np.round(sq.vertices, 9)))
        assert got == want

    def test_pentagon_rotated_pi(self):
        pent = RegularKGon(5, (0.0, 0.0), 1.0)
        refl = reflect_through_origin(pent)
        want = sorted((a + math.pi) % (2 * math.pi) for a in pent._angles)
        got = sorted(a % (2 * math.pi) for a in refl._angles)
        assert got == pytest.approx(want)

    @given(st.integers(4, 12), finite_coord, finite_coord)
    @settings(max_examples=100)
    def test_involution(self, k, cx, cy):
        poly = RegularKGon(k, (cx, cy), 1.0)
        twice = reflect_through_origin(reflect_through_origin(poly))
        assert np.allclose(twice.vertices, poly.vertices, atol=1e-9)


class TestKgonMetrics:
    def test_square(self):
        r_in, side = kgon_metrics(4, 1.0)
        assert r_in == pytest.approx(math.sqrt(2) / 2)
        assert side == pytest.approx(math.sqrt(2))

    def test_hexagon(self):
        r_in, side = kgon_metrics(6, 1.0)
        assert r_in == pytest.approx(math.sqrt(3) / 2)
        assert side == pytest.approx(1.0)

    def test_large_k_limit(self):
        r_in, _ = kgon_metrics(1000, 1.0)
        assert abs(r_in - 1.0) < 1e-4


class TestBoundaryComponents:
    def test_disjoint(self):
        a = RegularKGon(4, (0.0, 0.0), 1.0)
        b = a.translate((10.0, 0.0))
        assert boundary_intersection_components(a, b) == []

    def test_corner_overlap_two_components(self):
        a = RegularKGon(4, (0.0, 0.0), 1.0)
        b = a.translate((0.9, 0.9))
        comps = boundary_intersection_components(a, b)
        assert len(comps) == 2

    def test_shared_parallel_edges(self):
        a = RegularKGon(4, (0.0, 0.0), 1.0)  # axis-aligned, side sqrt(2)
        b = a.translate((0.5, 0.0))
        comps = boundary_intersection_components(a, b)
        assert len(comps) == 2
        for comp in comps:
            assert len(comp.polyline) >= 2  # edge segments, not single points

    def test_coincident_error(self):
        a = RegularKGon(4, (0.0, 0.0), 1.0)
        with pytest.raises(GeomHitError):
            boundary_intersection_components(a, RegularKGon(4, (0.0, 0.0), 1.0))


class TestAngleAt:
    def test_perpendicular(self):
        assert angle_at((0, 0), (1, 0), (0, 1)) == pytest.approx(math.pi / 2)

    def test_coincident_rays(self):
        assert angle_at((0, 0), (1, 0), (1, 0)) == 0.0

    def test_opposite_rays(self):
        assert angle_at((0, 0), (1, 0), (-1, 0)) == pytest.approx(math.pi)

    def test_zero_leg(self):
        with pytest.raises(ValueError):
            angle_at((0, 0), (0, 0), (1, 1))


class TestFatObjects:
    def _boundary_samples(self, obj, rng, n=200):
        """Generic boundary sampler: bisect membership along random rays."""
        d = obj.dim
        out = []
        for _ in range(n):
            v = rng.normal(size=d)
            v /= np.linalg.norm(v)
            lo, hi = 0.0, obj.height * 4.0 + 1.0
            assert not obj.contains(tuple(np.asarray(obj.center) + hi * v))
            for _ in range(60):
                mid = (lo + hi) / 2.0
                if obj.contains(tuple(np.asarray(obj.center) + mid * v)):
                    lo = mid
                else:
                    hi = mid
            out.append(tuple(np.asarray(obj.center) + lo * v))
        return out

    @pytest.mark.parametrize(
        "obj",
        [
            fat_linf_ball((0.5, -1.0), 2.0),
            fat_l2_ball((1.0, 2.0, 3.0), 2.0),
            fat_box((0.0, 0.0), (1.0, 3.0)),
        ],
    )
    def test_boundary_distances_within_width_height(self, obj):
        rng = np.random.Generator(np.random.PCG64(4))
        for p in self._boundary_samples(obj, rng):
            dist = linf_distance(p, obj.center)
            assert obj.width - 1e-6 <= dist <= obj.height + 1e-6

    def test_l2_ball_closed_forms(self):
        # min/max L-infinity distance to a radius-r sphere: r/sqrt(d)
        # (attained along the diagonal) and r (attained along an axis);
        # random boundary samples must never beat either extremum
        rng = np.random.Generator(np.random.PCG64(5))
        for d in (2, 3, 4):
            r = 2.5
            ball = fat_l2_ball((0.0,) * d, r)
            dirs = rng.normal(size=(5000, d))
            dirs /= np.linalg.norm(dirs, axis=1)[:, None]
            linf_on_sphere = np.abs(r * dirs).max(axis=1)
            diag = np.full(d, 1.0 / math.sqrt(d))
            axis = np.zeros(d)
            axis[0] = 1.0
            assert np.abs(r * diag).max() == pytest.approx(r / math.sqrt(d))
            assert np.abs(r * axis).max() == pytest.approx(r)
            assert linf_on_sphere.min() >= r / math.sqrt(d) - 1e-9
            assert linf_on_sphere.max() <= r + 1e-9
            assert ball.width == pytest.approx(r / math.sqrt(d))
            assert ball.height == pytest.approx(r)
            assert ball.alpha == pytest.approx(1.0 / math.sqrt(d))

    def test_membership_of_centers(self):
        assert fat_linf_ball((1.0, 1.0), 1.0).contains((1.0, 1.0))
        assert fat_l2_ball((0.0, 0.0), 1.0).contains((0.0, 0.0))
        assert fat_box((0.0, 0.0), (1.0, 2.0)).contains((0.0, 0.0))

    def test_width_height_ordering_enforced(self):
        from geomhit.geometry import FatObject

        with pytest.raises(GeomHitError):
            FatObject((0.0,), 2.0, 1.0, lambda p: True)


class TestIntersectionPolygon:
    def test_clip_known_overlap(self):
        a = RegularKGon(4, (0.0, 0.0), math.sqrt(2.0))  # [-1,1]^2
        b = a.translate((1.0, 1.0))  # [0,2]^2
        region = clip_convex_polygons(a, b)
        xs = sorted(round(p[0], 9) for p in region)
        ys = sorted(round(p[1], 9) for p in region)
        assert min(xs) == 0.0 and max(xs) == 1.0
        assert min(ys) == 0.0 and max(ys) == 1.0
