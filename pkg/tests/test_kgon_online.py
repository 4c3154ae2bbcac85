import math

import numpy as np
import pytest

from geomhit.errors import GeomHitError, InvariantViolation
from geomhit.geometry import RegularKGon, reflect_through_origin
from geomhit.kgon_online import (
    EsState,
    HhrState,
    build_partition,
    count_intersected_tiles,
    es_step,
    extreme_points,
    fisher_yates,
    hhr_step,
    prototype_constants,
    quadrant_centers,
    shrunk_set,
    tile_cone,
    type_of,
    vertex_ranking,
)


class TestPrototypeConstants:
    def test_square(self):
        assert prototype_constants(4) == (0.5, 2.5, 25)

    def test_pentagon(self):
        assert prototype_constants(5) == (0.25, 2.25, 63)

    def test_twelve(self):
        assert prototype_constants(12) == (0.5, 2.5, 23)

    def test_small_k_rejected(self):
        with pytest.raises(GeomHitError):
            prototype_constants(3)


class TestBuildPartition:
    def test_generic_points_keep_zero_offset(self):
        proto = RegularKGon(4, (0.0, 0.0), 1.0)
        part = build_partition(proto, [(0.13, 0.27), (1.01, 0.93)])
        assert part.offset == (0.0, 0.0)

    def test_point_on_line_shifts_offset(self):
        proto = RegularKGon(4, (0.0, 0.0), 1.0)  # tile side 0.5
        part = build_partition(proto, [(0.5, 0.3)])
        assert part.offset[0] != 0.0
        assert part.interior_clearance((0.5, 0.3)) > 1e-9 * part.side

    def test_empty_points(self):
        proto = RegularKGon(4, (0.0, 0.0), 1.0)
        part = build_partition(proto, [])
        assert part.side == 0.5

    def test_all_points_interior(self):
        rng = np.random.Generator(np.random.PCG64(0))
        proto = RegularKGon(5, (0.0, 0.0), 1.0)
        pts = [(float(rng.uniform(0, 4)), float(rng.uniform(0, 4))) for _ in range(50)]
        part = build_partition(proto, pts)
        for p in pts:
            assert part.interior_clearance(p) > 0


class TestTypeOf:
    def _setup(self, k):
        proto = RegularKGon(k, (0.0, 0.0), 1.0)
        part = build_partition(proto, [(0.1, 0.1)])
        _, t_sigma, _ = prototype_constants(k)
        return proto, part, t_sigma * proto.diameter / 2.0

    def test_centered_translate_gets_type_one(self):
        proto, part, ss = self._setup(4)
        tid = part.tile_of((0.1, 0.1))
        kg = proto.translate(part.tile_center(tid))
        assert type_of(kg, part, tid, ss) == 1

    def test_offset_translate_type(self):
        proto, part, ss = self._setup(4)
        tid = part.tile_of((0.1, 0.1))
        cx, cy = part.tile_center(tid)
        # center in the SE quadrant: only the SE center is guaranteed
        kg = proto.translate((cx + ss / 4.0, cy - ss / 4.0))
        tau = type_of(kg, part, tid, ss)
        o = quadrant_centers(part, tid, ss)[tau - 1]
        assert kg.contains(o)

    @pytest.mark.parametrize("k", [4, 5, 6, 7, 12])
    def test_observation3_randomized(self, k):
        from geomhit.checks import check_observation3

        result = check_observation3(k=k, trials=1000, seed=0)
        assert result.passed


class TestConeProperty:
    @pytest.mark.parametrize("k", [4, 5, 6, 7, 12, 20])
    def test_cone_opens_less_than_quarter_pi(self, k):
        proto = RegularKGon(k, (0.0, 0.0), 1.0)
        part = build_partition(proto, [(0.1, 0.1)])
        _, t_sigma, _ = prototype_constants(k)
        ss = t_sigma * proto.diameter / 2.0
        tid = part.tile_of((0.1, 0.1))
        for o in quadrant_centers(part, tid, ss):
            lo, hi = tile_cone(part, tid, o)
            assert hi - lo < math.pi / 4.0


def extreme_oracle(tile_pts, o_tau, proto, samples_per_edge=800):
    """Independent oracle: walk candidate centers densely along the
    reflected boundary at p (exactly the translates with p on their
    boundary) and look for one covering the quadrant center with every
    other tile point robustly outside."""
    refl = reflect_through_origin(proto)
    rel = refl.vertices - np.asarray(proto.center)
    k = rel.shape[0]
    out = []
    for p in tile_pts:
        others = [q for q in tile_pts if q != p]
        found = False
        for e in range(k):
            a = np.asarray(p) + rel[e]
            b = np.asarray(p) + rel[(e + 1) % k]
            for t in np.linspace(0.0, 1.0, samples_per_edge):
                c = a + t * (b - a)
                kg = proto.translate((float(c[0]), float(c[1])))
                if not kg.contains(o_tau):
                    continue
                if all(kg.margin(q) < -1e-9 for q in others):
                    found = True
                    break
            if found:
                break
        if found:
            out.append(p)
    return out


class TestExtremePoints:
    def _quadrant(self, k=4):
        proto = RegularKGon(k, (0.0, 0.0), 1.0)
        part = build_partition(proto, [(0.1, 0.1)])
        _, t_sigma, _ = prototype_constants(k)
        ss = t_sigma * proto.diameter / 2.0
        tid = part.tile_of((0.1, 0.1))
        return proto, part, tid, quadrant_centers(part, tid, ss)

    def test_empty_points(self):
        proto, part, tid, centers = self._quadrant()
        table = extreme_points([], centers[0], proto)
        assert len(table) == 0

    def test_singleton_is_extreme(self):
        proto, part, tid, centers = self._quadrant()
        table = extreme_points([(0.1, 0.1)], centers[0], proto)
        assert table.points == ((0.1, 0.1),)
        assert table.colors == (1,)

    def test_blocked_point_is_not_extreme(self):
        # v sits on the segment from u toward the quadrant center: any
        # translate covering both the center and u strictly contains v,
        # so u has no witness while v does
        proto, part, tid, centers = self._quadrant()
        o1 = centers[0]
        u = (0.45, 0.05)
        v = (u[0] + 0.25 * (o1[0] - u[0]), u[1] + 0.25 * (o1[1] - u[1]))
        table = extreme_points([u, v], o1, proto)
        assert v in table.points
        assert u not in table.points

    @pytest.mark.parametrize("k", [4, 5, 7])
    def test_against_dense_center_walk_oracle(self, k):
        rng = np.random.Generator(np.random.PCG64(10 + k))
        proto = RegularKGon(k, (0.0, 0.0), 1.0)
        part = build_partition(proto, [(0.1, 0.1)])
        _, t_sigma, _ = prototype_constants(k)
        ss = t_sigma * proto.diameter / 2.0
        for trial in range(6):
            n = int(rng.integers(2, 6))
            pts = [
                (float(rng.uniform(0.0, part.side)), float(rng.uniform(0.0, part.side)))
                for _ in range(n)
            ]
            tid = part.tile_of(pts[0])
            pts = [p for p in pts if part.tile_of(p) == tid]
            for tau, o in enumerate(quadrant_centers(part, tid, ss), start=1):
                got = set(extreme_points(pts, o, proto).points)
                want = set(extreme_oracle(pts, o, proto))
                assert want <= got
                assert got == want

    def test_theta_order_strictly_increasing(self):
        proto, part, tid, centers = self._quadrant()
        rng = np.random.Generator(np.random.PCG64(3))
        pts = [
            (float(rng.uniform(0.0, 0.5)), float(rng.uniform(0.0, 0.5))) for _ in range(8)
        ]
        pts = [p for p in pts if part.tile_of(p) == tid]
        table = extreme_points(pts, centers[1], proto)
        assert all(a < b for a, b in zip(table.thetas, table.thetas[1:]))


class TestVertexRanking:
    def test_single_vertex(self):
        assert vertex_ranking(1) == [1]

    def test_four_vertices(self):
        colors = vertex_ranking(4)
        assert colors == [1, 2, 1, 3]
        assert max(colors) == math.floor(math.log2(8))

    def test_seven_vertices_max_color(self):
        assert max(vertex_ranking(7)) == 3  # floor(log2 14)

    def test_validity_brute_force(self):
        for n in range(13):
            colors = vertex_ranking(n)
            assert len(colors) == n
            if n:
                assert max(colors) <= math.floor(math.log2(2 * n))
            for i in range(n):
                for j in range(i + 1, n):
                    if colors[i] == colors[j]:
                        assert any(colors[m] > colors[i] for m in range(i + 1, j))


class TestEsStep:
    def _state(self, seed=0, n=20, k=4, span=3.0):
        rng = np.random.Generator(np.random.PCG64(seed))
        pts = [(float(rng.uniform(0, span)), float(rng.uniform(0, span))) for _ in range(n)]
        proto = RegularKGon(k, (0.0, 0.0), 1.0)
        return EsState(proto, pts), proto, rng

    def test_single_occupied_tile_adds_one(self):
        state, proto, _ = self._state(n=1)
        kg = proto.translate(state.points[0])
        added = es_step(state, kg)
        assert added == [state.points[0]]

    def test_empty_translate_ignored(self):
        state, proto, _ = self._state(n=1)
        kg = proto.translate((100.0, 100.0))
        assert es_step(state, kg) == []
        assert state.hitting == []

    def test_hit_translate_noop(self):
        state, proto, _ = self._state(n=1)
        kg = proto.translate(state.points[0])
        es_step(state, kg)
        assert es_step(state, kg) == []

    def test_step_cap_and_correctness(self):
        state, proto, rng = self._state(seed=5, n=30)
        _, _, m_sigma = prototype_constants(4)
        objs = []
        for _ in range(300):
            c = (float(rng.uniform(-1, 4)), float(rng.uniform(-1, 4)))
            kg = proto.translate(c)
            objs.append(kg)
            added = es_step(state, kg)
            assert len(added) <= m_sigma
        for kg in objs:
            if any(kg.contains(p) for p in state.points):
                assert any(kg.contains(p) for p in state.hitting)

    def test_distinct_color_log_exercised(self):
        state, proto, rng = self._state(seed=6, n=25, span=1.5)
        for _ in range(400):
            c = (float(rng.uniform(-0.5, 2.0)), float(rng.uniform(-0.5, 2.0)))
            es_step(state, proto.translate(c))
        assert state.counters["lemma16_pairs"] > 0

    def test_duplicate_points_rejected(self):
        proto = RegularKGon(4, (0.0, 0.0), 1.0)
        with pytest.raises(GeomHitError):
            EsState(proto, [(0.1, 0.1), (0.1, 0.1)])

    def test_wrong_size_rejected(self):
        state, proto, _ = self._state(n=1)
        with pytest.raises(GeomHitError):
            es_step(state, RegularKGon(4, (0.0, 0.0), 2.0))


class TestShrunkSet:
    def test_power_of_two_is_singleton(self):
        kg = RegularKGon(4, (1.0, 2.0), 1.0)  # diameter 2
        assert shrunk_set(kg) == [kg]

    def test_five_members_for_square(self):
        kg = RegularKGon(4, (0.0, 0.0), 1.5)  # diameter 3
        members = shrunk_set(kg)
        assert len(members) == 5
        for m in members:
            assert m.diameter == pytest.approx(2.0)

    def test_corner_members_share_corners(self):
        kg = RegularKGon(5, (0.3, -0.2), 1.4)
        members = shrunk_set(kg)
        corners = kg.vertices
        for i, m in enumerate(members[1:]):
            mc = m.vertices
            dists = np.hypot(mc[:, 0] - corners[i, 0], mc[:, 1] - corners[i, 1])
            assert dists.min() < 1e-9  # vertex i coincides

    def test_members_inside_parent(self):
        rng = np.random.Generator(np.random.PCG64(4))
        for k in (4, 5, 6):
            kg = RegularKGon(k, (0.0, 0.0), float(rng.uniform(0.55, 3.9)))
            outer = RegularKGon(k, kg.center, kg.circumradius * (1 + 1e-9), _angles=kg._angles)
            for m in shrunk_set(kg):
                for v in m.vertices:
                    assert outer.contains((v[0], v[1]))

    def test_coverage_sampling_smoke(self):
        from geomhit.checks import check_shrunk_coverage

        result = check_shrunk_coverage(k_values=(4, 5), homothets=10, samples=2000, seed=0)
        assert result.passed


class TestHhr:
    def _points(self, seed=7, n=40, span=5.0):
        rng = np.random.Generator(np.random.PCG64(seed))
        return [(float(rng.uniform(0, span)), float(rng.uniform(0, span))) for _ in range(n)], rng

    def test_lazy_preprocessing_once(self):
        pts, rng = self._points()
        state = HhrState(4, pts, 8.0, seed=1)
        kg1 = RegularKGon(4, (2.0, 2.0), 1.3)
        kg2 = RegularKGon(4, (3.0, 3.0), 1.2)  # same layer (diameters in [2,4))
        hhr_step(state, kg1)
        es = state.layers[1]
        hhr_step(state, kg2)
        assert state.layers[1] is es
        assert set(state.layers) == {1}

    def test_power_of_two_single_presentation(self):
        pts, _ = self._points()
        state = HhrState(4, pts, 8.0, seed=2)
        kg = RegularKGon(4, (2.0, 2.0), 1.0)  # diameter 2 = 2^1
        assert len(shrunk_set(kg)) == 1
        hhr_step(state, kg)

    def test_diameter_range_enforced(self):
        pts, _ = self._points()
        state = HhrState(4, pts, 8.0, seed=3)
        with pytest.raises(GeomHitError):
            hhr_step(state, RegularKGon(4, (0.0, 0.0), 0.4))
        with pytest.raises(GeomHitError):
            hhr_step(state, RegularKGon(4, (0.0, 0.0), 8.0))

    def test_full_run_hits_and_bound(self):
        pts, rng = self._points(seed=7, n=40)
        state = HhrState(4, pts, 8.0, seed=7)
        objs = []
        for _ in range(200):
            c = (float(rng.uniform(-1, 6)), float(rng.uniform(-1, 6)))
            diam = float(math.exp(rng.uniform(0, math.log(8))))
            kg = RegularKGon(4, c, diam / 2.0)
            objs.append(kg)
            hhr_step(state, kg)
        hit = state.hitting
        relevant = [kg for kg in objs if any(kg.contains(p) for p in pts)]
        for kg in relevant:
            assert any(kg.contains(p) for p in hit)
        bound = 4 * 25 * (4 + 1) ** 2 * math.floor(math.log2(16)) * math.floor(math.log2(80))
        assert state.cost <= bound  # OPT >= 1 whenever cost > 0

    def test_determinism(self):
        pts, rng = self._points(seed=9)
        objs = []
        for _ in range(60):
            c = (float(rng.uniform(0, 5)), float(rng.uniform(0, 5)))
            diam = float(math.exp(rng.uniform(0, math.log(8))))
            objs.append(RegularKGon(4, c, diam / 2.0))
        a = HhrState(4, pts, 8.0, seed=11)
        b = HhrState(4, pts, 8.0, seed=11)
        for kg in objs:
            hhr_step(a, kg)
        for kg in objs:
            hhr_step(b, kg)
        assert a.hitting == b.hitting

    def test_fisher_yates_deterministic(self):
        rng1 = np.random.Generator(np.random.PCG64(0))
        rng2 = np.random.Generator(np.random.PCG64(0))
        items = list(range(10))
        assert fisher_yates(items, rng1) == fisher_yates(items, rng2)


class TestTileCounting:
    @pytest.mark.parametrize("k,bound", [(4, 25), (5, 63), (6, 63), (7, 23), (12, 23)])
    def test_counts_stay_under_class_bound(self, k, bound):
        proto = RegularKGon(k, (0.0, 0.0), 1.0)
        part = build_partition(proto, [(0.1, 0.1)])
        rng = np.random.Generator(np.random.PCG64(20 + k))
        worst = 0
        for _ in range(2000):
            c = (float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2)))
            n = count_intersected_tiles(part, proto.translate(c))
            worst = max(worst, n)
        assert worst <= bound
        assert worst > 0


class TestIntervalProperty:
    def test_interval_smoke(self):
        from geomhit.checks import check_interval

        result = check_interval(k=4, trials=1000, seed=0)
        assert result.checks > 100
        assert result.passed
