"""Randomized invariant suites for the structural lemmas the algorithms
rely on.  Each suite runs a configurable number of trials and reports the
checks performed, the violations found, and suite-specific extremes."""

import math
from dataclasses import dataclass, field

import numpy as np

from . import adversary
from .errors import InvariantViolation
from .geometry import (
    AxisHypercube,
    RegularKGon,
    angle_at,
    boundary_intersection_components,
    clip_convex_polygons,
    convex_distance,
    reflect_through_origin,
    sample_in_polygon,
)
from .hypercube_online import core_of, layer_of, layer_spacing
from .kgon_online import (
    EsState,
    build_partition,
    count_intersected_tiles,
    es_step,
    prototype_constants,
    quadrant_centers,
    shrunk_set,
    tile_cone,
    type_of,
    vertex_ranking,
)
from .lattice import LatticeSpec, anc_round, count_in_box, enumerate_in_box


@dataclass
class CheckResult:
    name: str
    checks: int
    violations: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.violations


def _rng(seed, key=0):
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(key,)))
    )


def _random_intersecting_pair(k, rng, radius=1.0):
    """Two distinct translates of a k-gon whose interiors intersect."""
    a = RegularKGon(k, (0.0, 0.0), radius)
    while True:
        off = (
            float(rng.uniform(-2.0 * radius, 2.0 * radius)),
            float(rng.uniform(-2.0 * radius, 2.0 * radius)),
        )
        if math.hypot(*off) < 1e-6:
            continue
        b = a.translate(off)
        region = clip_convex_polygons(a, b)
        if len(region) >= 3:
            return a, b, region


def check_angle_property(k_values=(4, 5, 6, 7, 12), trials=10_000, seed=0):
    """Two points on distinct boundary components subtend an angle of at
    least pi/4 from anywhere in the intersection of two translates."""
    violations = []
    min_angle = math.inf
    checks = 0
    for ki, k in enumerate(k_values):
        rng = _rng(seed, ki)
        for _ in range(trials):
            a, b, region = _random_intersecting_pair(k, rng)
            comps = boundary_intersection_components(a, b)
            if len(comps) != 2:
                violations.append(f"k={k}: {len(comps)} boundary components")
                continue
            p = sample_in_polygon(region, rng)
            x = comps[0].sample(rng)
            y = comps[1].sample(rng)
            if (
                math.hypot(p[0] - x[0], p[1] - x[1]) < 1e-9
                or math.hypot(p[0] - y[0], p[1] - y[1]) < 1e-9
            ):
                continue
            ang = angle_at(p, x, y)
            checks += 1
            min_angle = min(min_angle, ang)
            if ang < math.pi / 4.0 - 1e-6:
                violations.append(f"k={k}: angle {ang:.6f} at p={p}")
    return CheckResult("angle_property", checks, violations, {"min_angle": min_angle})


def check_observation4(trials=10_000, seed=0):
    """Any point of a square sees two adjacent corners at >= pi/4."""
    rng = _rng(seed)
    a, b = (0.0, 0.0), (1.0, 0.0)
    violations = []
    worst = math.inf
    for _ in range(trials):
        p = (float(rng.random()), float(rng.random()))
        if math.hypot(p[0] - a[0], p[1] - a[1]) < 1e-12 or math.hypot(
            p[0] - b[0], p[1] - b[1]
        ) < 1e-12:
            continue
        ang = angle_at(p, a, b)
        worst = min(worst, ang)
        if ang < math.pi / 4.0 - 1e-9:
            violations.append(f"angle {ang} at {p}")
    return CheckResult("observation4", trials, violations, {"min_angle": worst})


def check_convex_distance_properties(trials=10_000, seed=0):
    """Scale-containment equivalence and the reflection identity."""
    rng = _rng(seed)
    violations = []
    for t in range(trials):
        k = int(rng.integers(4, 13))
        poly = RegularKGon(k, (float(rng.uniform(-5, 5)), float(rng.uniform(-5, 5))), 1.0)
        x = poly.center
        y = (x[0] + float(rng.uniform(-3, 3)), x[1] + float(rng.uniform(-3, 3)))
        dist = convex_distance(poly, x, y)
        inside = poly.contains(y)
        if (dist <= 1.0) != inside and abs(dist - 1.0) > 1e-9:
            violations.append(f"containment mismatch: d={dist}, inside={inside}")
        refl = reflect_through_origin(poly)
        x2 = (float(rng.uniform(-5, 5)), float(rng.uniform(-5, 5)))
        d_fwd = _offset_distance(poly, x2, y)
        d_rev = _offset_distance(refl, y, x2)
        if abs(d_fwd - d_rev) > 1e-9:
            violations.append(f"reflection identity off by {abs(d_fwd - d_rev)}")
    return CheckResult("convex_distance", trials, violations)


def _offset_distance(poly, x, y):
    """d_poly(x, y): the polygon's shape evaluated for displacement y - x."""
    return convex_distance(poly, x, y)


def check_lattice_bracket(trials=10_000, seed=0, dmax=4):
    """Counting bracket floor(l)^d <= |points| <= floor(r+1)^d for random
    cubes with side in [l beta, r beta]."""
    rng = _rng(seed)
    violations = []
    for _ in range(trials):
        d = int(rng.integers(1, dmax + 1))
        beta = float(rng.uniform(0.2, 3.0))
        ell = float(rng.uniform(0.5, 4.0))
        r = ell + float(rng.uniform(0.05, 3.0))
        side = float(rng.uniform(ell, r)) * beta
        center = tuple(float(rng.uniform(-10, 10)) for _ in range(d))
        cube = AxisHypercube(center, side / 2.0, closed=True)
        n = count_in_box(LatticeSpec(beta, d), cube)
        lo, hi = math.floor(ell) ** d, math.floor(r + 1) ** d
        if not (lo <= n <= hi):
            violations.append(f"count {n} outside [{lo}, {hi}] (d={d})")
    return CheckResult("lattice_bracket", trials, violations)


def check_anc_round_closest(trials=10_000, seed=0, dmax=4):
    """The rounding rule lands on a closest coarse-lattice point."""
    rng = _rng(seed)
    violations = []
    for _ in range(trials):
        d = int(rng.integers(1, dmax + 1))
        i = int(rng.integers(0, 4))
        step = 2.0 ** (i + 1)
        c = tuple(float(rng.uniform(-40, 40)) for _ in range(d))
        r = anc_round(c, i)
        dist = max(abs(a - b) for a, b in zip(r, c))
        best = dist
        for q in _lattice_neighbors(c, step):
            best = min(best, max(abs(a - b) for a, b in zip(q, c)))
        if dist > best + 1e-9:
            violations.append(f"rounded point at {dist}, nearest at {best}")
        if dist > 2.0**i + 1e-9:
            violations.append(f"distance {dist} exceeds 2^{i}")
        if any((coord / step) != round(coord / step) for coord in r):
            violations.append("rounded point not an exact lattice multiple")
    return CheckResult("anc_round", trials, violations)


def _lattice_neighbors(c, step):
    from itertools import product

    axes = []
    for coord in c:
        z = math.floor(coord / step)
        axes.append([(z - 1) * step, z * step, (z + 1) * step, (z + 2) * step])
    return product(*axes)


def layers_up_to(M):
    """Layer indices whose width interval meets [1, M]."""
    ks = []
    k = 0
    while layer_spacing(k) <= M:
        ks.append(k)
        k += 1
    return ks


def random_cube_in_layer(k, d, rng, span=60.0):
    lo = layer_spacing(k)
    hi = layer_spacing(k + 1)
    w = float(rng.uniform(lo, hi))
    center = tuple(float(rng.uniform(-span, span)) for _ in range(d))
    return AxisHypercube(center, w, closed=True)


def check_core_equality(M=64, trials_per_layer=10_000, seed=0, dims=(1, 2, 3, 4)):
    """Core construction preserves the layer-lattice point set exactly."""
    violations = []
    checks = 0
    for k in layers_up_to(M):
        rng = _rng(seed, k)
        layer = layer_of(layer_spacing(k))
        for t in range(trials_per_layer):
            d = dims[t % len(dims)]
            cube = random_cube_in_layer(k, d, rng)
            lattice = LatticeSpec(layer.spacing, d)
            core = core_of(cube, layer)
            checks += 1
            if set(enumerate_in_box(lattice, core)) != set(enumerate_in_box(lattice, cube)):
                violations.append(f"layer {k} d={d}: core points differ")
    return CheckResult("core_equality", checks, violations)


def check_layer_window(M=64, trials_per_layer=10_000, seed=0, dims=(3, 4)):
    """Every layer-k cube holds between 2^d and 3^d layer-lattice points."""
    violations = []
    checks = 0
    for k in layers_up_to(M):
        rng = _rng(seed, 1000 + k)
        for t in range(trials_per_layer):
            d = dims[t % len(dims)]
            cube = random_cube_in_layer(k, d, rng)
            n = count_in_box(LatticeSpec(layer_spacing(k), d), cube)
            checks += 1
            if not (2**d <= n <= 3**d):
                violations.append(f"layer {k} d={d}: {n} points")
    return CheckResult("layer_window", checks, violations)


def _sample_translate_meeting_tile(proto, partition, tid, rng):
    """Random translate with closed intersection with the given tile."""
    x0, y0, x1, y1 = partition.tile_bounds(tid)
    r = proto.circumradius
    while True:
        c = (
            float(rng.uniform(x0 - r, x1 + r)),
            float(rng.uniform(y0 - r, y1 + r)),
        )
        kg = proto.translate(c)
        from . import kernels

        if kernels.polygon_box_overlap(kg.vertices, x0, y0, x1, y1):
            return kg


def check_observation3(k=4, trials=10_000, seed=0):
    """Every translate meeting a tile covers some quadrant center."""
    proto = RegularKGon(k, (0.0, 0.0), 1.0)
    partition = build_partition(proto, [(0.1, 0.1)])
    _, t_sigma, _ = prototype_constants(k)
    super_side = t_sigma * proto.diameter / 2.0
    tid = partition.tile_of((0.1, 0.1))
    rng = _rng(seed, k)
    violations = []
    for _ in range(trials):
        kg = _sample_translate_meeting_tile(proto, partition, tid, rng)
        try:
            type_of(kg, partition, tid, super_side)
        except InvariantViolation:
            violations.append(f"k={k}: translate at {kg.center} covers no center")
    return CheckResult("observation3", trials, violations)


def check_tile_bound(k, trials=100_000, seed=0):
    """Empirical max intersected-tile count vs the per-class constant."""
    proto = RegularKGon(k, (0.0, 0.0), 1.0)
    partition = build_partition(proto, [(0.1, 0.1)])
    _, _, m_sigma = prototype_constants(k)
    rng = _rng(seed, 10 + k)
    worst = 0
    violations = []
    for _ in range(trials):
        c = (float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2)))
        n = count_intersected_tiles(partition, proto.translate(c))
        worst = max(worst, n)
        if n > m_sigma:
            violations.append(f"k={k}: {n} tiles > {m_sigma}")
    return CheckResult(f"tile_bound_k{k}", trials, violations, {"max_tiles": worst, "bound": m_sigma})


def check_cone(k_values=(4, 5, 6, 7, 12)):
    """Quadrant-center cones spanned by a tile open less than pi/4."""
    violations = []
    widest = 0.0
    checks = 0
    for k in k_values:
        proto = RegularKGon(k, (0.0, 0.0), 1.0)
        partition = build_partition(proto, [(0.1, 0.1)])
        _, t_sigma, _ = prototype_constants(k)
        super_side = t_sigma * proto.diameter / 2.0
        tid = partition.tile_of((0.1, 0.1))
        for o in quadrant_centers(partition, tid, super_side):
            lo, hi = tile_cone(partition, tid, o)
            widest = max(widest, hi - lo)
            checks += 1
            if hi - lo >= math.pi / 4.0:
                violations.append(f"k={k}: cone opens {hi - lo:.4f}")
    return CheckResult("cone", checks, violations, {"max_opening": widest})


def _random_tile_instance(k, n_pts, rng):
    proto = RegularKGon(k, (0.0, 0.0), 1.0)
    seed_pts = [
        (float(rng.uniform(0.0, 1.0)), float(rng.uniform(0.0, 1.0))) for _ in range(n_pts)
    ]
    partition = build_partition(proto, seed_pts)
    return proto, partition, seed_pts


def check_interval(k=4, trials=10_000, seed=0, n_pts=8):
    """A same-type translate's extreme points form a contiguous angular run."""
    rng = _rng(seed, 20 + k)
    proto, partition, pts = _random_tile_instance(k, n_pts, rng)
    _, t_sigma, _ = prototype_constants(k)
    super_side = t_sigma * proto.diameter / 2.0
    state = EsState(proto, pts)
    violations = []
    checks = 0
    tiles = sorted(state.tiles)
    for _ in range(trials):
        tid = tiles[int(rng.integers(0, len(tiles)))]
        kg = _sample_translate_meeting_tile(proto, partition, tid, rng)
        if not any(kg.contains(p) for p in state.tiles[tid]):
            continue
        tau = type_of(kg, partition, tid, super_side)
        table = state.table(tid, tau)
        flags = [kg.contains(p) for p in table.points]
        if not any(flags):
            continue
        checks += 1
        first = flags.index(True)
        last = len(flags) - 1 - flags[::-1].index(True)
        if not all(flags[first : last + 1]):
            violations.append(f"k={k}: non-contiguous hit set {flags}")
    return CheckResult("interval", checks, violations)


def check_component_cone(k=4, trials=10_000, seed=0):
    """Boundaries of two same-type translates cross a tile's cone in at
    most one connected component."""
    from .kgon_online import point_in_cone

    rng = _rng(seed, 30 + k)
    proto = RegularKGon(k, (0.0, 0.0), 1.0)
    partition = build_partition(proto, [(0.1, 0.1)])
    _, t_sigma, _ = prototype_constants(k)
    super_side = t_sigma * proto.diameter / 2.0
    tid = partition.tile_of((0.1, 0.1))
    centers = quadrant_centers(partition, tid, super_side)
    violations = []
    checks = 0
    for _ in range(trials):
        a = _sample_translate_meeting_tile(proto, partition, tid, rng)
        b = _sample_translate_meeting_tile(proto, partition, tid, rng)
        if math.hypot(a.center[0] - b.center[0], a.center[1] - b.center[1]) < 1e-9:
            continue
        try:
            tau_a = type_of(a, partition, tid, super_side)
            tau_b = type_of(b, partition, tid, super_side)
        except InvariantViolation:
            continue
        if tau_a != tau_b:
            continue
        comps = boundary_intersection_components(a, b)
        if not comps:
            continue
        checks += 1
        apex = centers[tau_a - 1]
        touching = sum(
            1
            for comp in comps
            if any(point_in_cone(partition, tid, apex, p) for p in comp.polyline)
        )
        if touching > 1:
            violations.append(f"k={k}: {touching} components inside the cone")
    return CheckResult("component_cone", checks, violations)


def check_vertex_ranking(n_max=12):
    """Brute-force validity and color budget for all short paths."""
    violations = []
    checks = 0
    for n in range(n_max + 1):
        colors = vertex_ranking(n)
        checks += 1
        if len(colors) != n:
            violations.append(f"n={n}: wrong length")
            continue
        if n and max(colors) > math.floor(math.log2(2 * n)):
            violations.append(f"n={n}: {max(colors)} colors")
        for i in range(n):
            for j in range(i + 1, n):
                if colors[i] == colors[j]:
                    if not any(colors[m] > colors[i] for m in range(i + 1, j)):
                        violations.append(f"n={n}: invalid pair ({i},{j})")
    return CheckResult("vertex_ranking", checks, violations)


def check_shrunk_coverage(k_values=(4, 5, 6), homothets=100, samples=10_000, seed=0):
    """Union of the shrunk set equals the homothet (inward-offset sampling)."""
    violations = []
    checks = 0
    for k in k_values:
        rng = _rng(seed, 40 + k)
        for _ in range(homothets):
            diam = float(rng.uniform(1.0, 8.0))
            kg = RegularKGon(
                k,
                (float(rng.uniform(-5, 5)), float(rng.uniform(-5, 5))),
                diam / 2.0,
            )
            members = shrunk_set(kg)
            inner = RegularKGon(k, kg.center, kg.circumradius * (1.0 - 1e-9), _angles=kg._angles)
            pts = np.stack(
                [sample_in_polygon([tuple(v) for v in inner.vertices], rng) for _ in range(samples)]
            )
            covered = np.zeros(len(pts), dtype=bool)
            for m in members:
                covered |= m.contains_many(pts)
                if covered.all():
                    break
            checks += samples
            if not covered.all():
                missed = pts[~covered][0]
                violations.append(f"k={k} diam={diam:.3f}: sample {missed} uncovered")
    return CheckResult("shrunk_coverage", checks, violations)


def check_adversary(d=2, M=16, trials=1000, seed=0, exhaustive=False):
    """Witness existence plus the nesting and sibling-disjointness lemmas."""
    violations = []
    checks = 0

    def inspect(path):
        nonlocal checks
        checks += 1
        try:
            adversary.verify_path(path)
        except InvariantViolation as exc:
            violations.append(str(exc))
            return
        for cube, sib in zip(path[1:], adversary.sibling_cubes(path)):
            gap = max(
                abs(a - b) for a, b in zip(cube.center, sib.center)
            )
            if gap < cube.width + sib.width - 1e-9:
                violations.append("sibling cubes overlap interiorly")

    if exhaustive:
        for path in adversary.enumerate_paths(d, M):
            inspect(path)
    else:
        for t in range(trials):
            rng = _rng(seed, t)
            inspect(adversary.sample_path(d, M, rng))
    return CheckResult("adversary", checks, violations)


def check_es_inline(k=4, n_pts=20, objects_per_run=25, runs=400, seed=0, span=1.5):
    """Repeated translate runs over fresh dense point sets; the tile-type,
    extreme-point and distinct-color guarantees are asserted inline by the
    algorithm itself.  Fresh states keep unstabbed arrivals frequent so the
    distinct-color lemma is exercised many times."""
    proto = RegularKGon(k, (0.0, 0.0), 1.0)
    violations = []
    counters = {}
    for run in range(runs):
        rng = _rng(seed, 50_000 + run)
        pts = set()
        while len(pts) < n_pts:
            pts.add((float(rng.uniform(0.0, span)), float(rng.uniform(0.0, span))))
        state = EsState(proto, sorted(pts))
        for _ in range(objects_per_run):
            c = (
                float(rng.uniform(-0.5, span + 0.5)),
                float(rng.uniform(-0.5, span + 0.5)),
            )
            try:
                es_step(state, proto.translate(c))
            except InvariantViolation as exc:
                violations.append(f"run {run}: {exc}")
        for name, v in state.counters.items():
            counters[name] = counters.get(name, 0) + v
    return CheckResult("es_inline", runs * objects_per_run, violations, counters)
