"""Adversarial lower-bound instances for hypercube hitting.

A complete binary tree of nested homothetic hypercubes is walked from the
root by fair coin flips; every root-to-leaf path admits a single integer
point hitting all of its cubes, while any online algorithm pays on
average for half the levels.  The tree is never materialized: a walk
carries only the current node, its center, and its block root's center.
"""

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import GeomHitError, InvariantViolation
from .geometry import AxisHypercube
from .hypercube_online import LirState, lir_step

SHRINK_FACTOR = 1e-6  # of the leaf width


@dataclass(frozen=True)
class TreeNodeId:
    k: int  # block level, 1-based
    l: int  # block index within its level, 1-based
    i: int  # level inside the block tree, 1..d
    j: int  # index inside its block level, 1-based


@dataclass(frozen=True)
class AdversaryCube:
    node: TreeNodeId
    center: tuple
    width: float
    shrink_epsilon: float

    def exact(self):
        return AxisHypercube(self.center, self.width, closed=True)

    def presented(self):
        """The cube actually shown to algorithms: shrunk so that interior
        and closed hitting coincide."""
        return AxisHypercube(self.center, self.width - self.shrink_epsilon, closed=True)


def _block_levels(M):
    t = round(math.log(M, 4))
    if 4**t != M:
        raise GeomHitError("M must be an integral power of 4")
    return t


def tree_height(d, M):
    return d * _block_levels(M)


def block_width(k, M):
    return M / 4 ** (k - 1)


def child_centers(node, center, block_root_center, d, M):
    """Centers of the two children of a non-leaf node (left, right)."""
    w = block_width(node.k, M)
    if node.i < d:
        left = list(center)
        right = list(center)
        left[node.i - 1] += w
        right[node.i - 1] -= w
        return tuple(left), tuple(right)
    if node.k >= _block_levels(M):
        raise GeomHitError("leaf of the tree has no children")
    mid = [(a + b) / 2.0 for a, b in zip(block_root_center, center)]
    shift = M / 2 ** (2 * node.k - 1)
    left = list(mid)
    right = list(mid)
    left[d - 1] += shift
    right[d - 1] -= shift
    return tuple(left), tuple(right)


def _child_nodes(node, d, M):
    if node.i < d:
        return (
            TreeNodeId(node.k, node.l, node.i + 1, 2 * node.j - 1),
            TreeNodeId(node.k, node.l, node.i + 1, 2 * node.j),
        )
    if node.k >= _block_levels(M):
        raise GeomHitError("leaf of the tree has no children")
    base = 2**d * (node.l - 1) + 2 * node.j
    return (
        TreeNodeId(node.k + 1, base - 1, 1, 1),
        TreeNodeId(node.k + 1, base, 1, 1),
    )


def path_from_bits(d, M, bits):
    """Root-to-leaf cube sequence determined by a left/right bit string."""
    h = tree_height(d, M)
    if len(bits) != h - 1:
        raise GeomHitError(f"need {h - 1} direction bits")
    eps = SHRINK_FACTOR * block_width(_block_levels(M), M)
    node = TreeNodeId(1, 1, 1, 1)
    center = tuple(0.0 for _ in range(d))
    block_root = center
    path = [AdversaryCube(node, center, block_width(1, M), eps)]
    for b in bits:
        lc, rc = child_centers(node, center, block_root, d, M)
        ln, rn = _child_nodes(node, d, M)
        entering_new_block = node.i == d
        node, center = (ln, lc) if b == 0 else (rn, rc)
        if entering_new_block:
            block_root = center
        path.append(AdversaryCube(node, center, block_width(node.k, M), eps))
    return path


def sample_path(d, M, rng):
    """Random root-to-leaf path: the root with certainty, then fair coins."""
    h = tree_height(d, M)
    bits = [int(rng.integers(0, 2)) for _ in range(h - 1)]
    return path_from_bits(d, M, bits)


def enumerate_paths(d, M):
    """All 2^(h-1) root-to-leaf paths; intended for small heights."""
    h = tree_height(d, M)
    if h > 20:
        raise GeomHitError("exhaustive enumeration limited to height <= 20")
    for bits in product((0, 1), repeat=h - 1):
        yield path_from_bits(d, M, bits)


def sibling_cubes(path):
    """For each non-root cube on the path, the cube of its sibling node."""
    d = len(path[0].center)
    M = path[0].width  # the root cube has width M
    eps = path[0].shrink_epsilon
    out = []
    block_root = path[0].center
    for parent, child in zip(path, path[1:]):
        lc, rc = child_centers(parent.node, parent.center, block_root, d, M)
        other = rc if child.center == lc else lc
        out.append(AdversaryCube(child.node, other, child.width, eps))
        if child.node.i == 1 and parent.node.i == d:
            block_root = child.center
    return out


def _boxes_intersection(cubes):
    d = len(cubes[0].center)
    lo = [-math.inf] * d
    hi = [math.inf] * d
    for c in cubes:
        for a in range(d):
            lo[a] = max(lo[a], c.center[a] - c.width)
            hi[a] = min(hi[a], c.center[a] + c.width)
    return lo, hi


def _box_contains_box(lo, hi, cube):
    return all(
        lo[a] <= cube.center[a] - cube.width and cube.center[a] + cube.width <= hi[a]
        for a in range(len(lo))
    )


def verify_path(path):
    """Check the nesting lemmas along a path and return an integer witness
    hitting every cube.

    Each block's cubes must fit inside the previous block's common
    intersection; the final intersection must contain a width-2 hypercube,
    hence an integer point.
    """
    d = len(path[0].center)
    blocks = {}
    for cube in path:
        blocks.setdefault(cube.node.k, []).append(cube)
    ks = sorted(blocks)
    for a, b in zip(ks, ks[1:]):
        lo, hi = _boxes_intersection(blocks[a])
        for cube in blocks[b]:
            if not _box_contains_box(lo, hi, cube):
                raise InvariantViolation(
                    f"block {b} cube escapes block {a}'s intersection"
                )
    last = blocks[ks[-1]]
    lo, hi = _boxes_intersection(last)
    w = last[0].width
    block_root = last[0].center
    mid = [(a + b) / 2.0 for a, b in zip(block_root, last[-1].center)]
    for sign in (+1.0, -1.0):
        c = list(mid)
        c[d - 1] += sign * w / 2.0
        inner = AdversaryCube(last[-1].node, tuple(c), w / 2.0, 0.0)
        if not _box_contains_box(lo, hi, inner):
            raise InvariantViolation("half-width cube escapes the intersection")
    witness_center = list(mid)
    witness_center[d - 1] += w / 2.0
    witness = tuple(float(math.floor(c + 0.5)) for c in witness_center)
    for cube in path:
        if not cube.presented().contains(witness):
            raise InvariantViolation("witness misses a presented cube")
        interior = AxisHypercube(cube.center, cube.width, closed=False)
        if not interior.contains(witness):
            raise InvariantViolation("witness not interior to a cube")
    return witness


class GreedyCenterHitter:
    """Baseline: stab each unhit cube at the integer point nearest its center."""

    def __init__(self, d):
        self.chosen = set()

    def step(self, cube):
        if any(cube.contains(p) for p in self.chosen):
            return []
        r = tuple(float(math.floor(c + 0.5)) for c in cube.center)
        self.chosen.add(r)
        return [r]


class LirHitter:
    """Adapter presenting adversary cubes to the layered randomized algorithm."""

    def __init__(self, d, M, seed):
        self.state = LirState(d, M, seed)

    def step(self, cube):
        return lir_step(self.state, cube)


def measure_expected_cost(make_hitter, d, M, trials, seed):
    """Monte Carlo mean and standard error of an online hitter's cost over
    random adversary paths."""
    costs = np.empty(trials, dtype=np.float64)
    for t in range(trials):
        seq = np.random.SeedSequence(entropy=seed, spawn_key=(t,))
        rng = np.random.Generator(np.random.PCG64(seq))
        path = sample_path(d, M, rng)
        hitter = make_hitter(int(seq.generate_state(1)[0]))
        cost = 0
        for cube in path:
            cost += len(hitter.step(cube.presented()))
        costs[t] = cost
    mean = float(costs.mean())
    se = float(costs.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return mean, se


def cost_floor(d, M):
    """Expected-cost floor 1 + (h - 1)/2 for any online algorithm."""
    return 1.0 + 0.5 * (tree_height(d, M) - 1)
