"""Experiment orchestration: replay instance streams through the online
algorithms, compare against the exact offline optimum, and emit reports."""

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import GeomHitError, InvariantViolation
from .fat_online import AncState, anc_bound, anc_step
from .geometry import RegularKGon
from .hypercube_online import LirState, lir_step
from .kgon_online import EsState, HhrState, es_step, hhr_step, prototype_constants
from .offline_opt import HitInstance, exact_min_hitting_set, object_contains, candidates_for_lattice_variant

ALGORITHMS = ("lir", "anc", "es", "hhr")


class BoundViolation(InvariantViolation):
    """A proven competitive-ratio bound was exceeded."""


@dataclass
class TrialReport:
    algorithm: str
    seed: int
    cost: int
    opt: int = None
    ratio: float = None
    bound: float = None
    invariant_checks: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    def to_dict(self):
        return {
            "algorithm": self.algorithm,
            "seed": self.seed,
            "cost": self.cost,
            "opt": self.opt,
            "ratio": self.ratio,
            "bound": self.bound,
            "invariant_checks": self.invariant_checks,
            "wall_time_s": self.wall_time_s,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass
class RunConfig:
    algo: str
    seed: int = 0
    trials: int = 1
    compute_opt: bool = True

    def __post_init__(self):
        if self.algo not in ALGORITHMS:
            raise GeomHitError(f"unknown algorithm {self.algo!r}")


def _expected_class(algo):
    return {"lir": "hypercube", "anc": "fat", "es": "kgon", "hhr": "kgon"}[algo]


def _run_lir(inst, seed):
    state = LirState(inst.d, inst.M, seed)
    for obj in inst.objects:
        lir_step(state, obj)
    sol = state.solution
    return state.cost, sol, {"layer_window": state.presented}


def _run_anc(inst, seed):
    state = AncState(inst.M)
    for obj in inst.objects:
        anc_step(state, obj)
    return len(state.chosen), list(state.chosen), {"claim3": len(state.chosen)}


def _es_prototype(inst):
    diams = {round(o.diameter, 9) for o in inst.objects}
    if len(diams) > 1:
        raise GeomHitError("translate-only algorithm got mixed diameters")
    d = inst.objects[0].diameter if inst.objects else 2.0
    return RegularKGon(inst.k, (0.0, 0.0), d / 2.0)


def _run_es(inst, seed):
    state = EsState(_es_prototype(inst), inst.points)
    for obj in inst.objects:
        es_step(state, obj)
    return len(state.hitting), list(state.hitting), dict(state.counters)


def _run_hhr(inst, seed):
    state = HhrState(inst.k, inst.points, inst.M, seed)
    for obj in inst.objects:
        hhr_step(state, obj)
    return state.cost, list(state.hitting), state.counters()


_RUNNERS = {"lir": _run_lir, "anc": _run_anc, "es": _run_es, "hhr": _run_hhr}


def theorem_bound(algo, inst):
    """Proven competitive-ratio bound for the instance parameters, or None
    when only an asymptotic guarantee exists (the layered hypercube case)."""
    if algo == "anc":
        alpha = min(o.alpha for o in inst.objects) if inst.objects else 1.0
        return float(anc_bound(alpha, inst.d, inst.M)) if inst.M > 1 else None
    if algo == "es":
        _, _, m_sigma = prototype_constants(inst.k)
        n = inst.n_points
        return float(4 * m_sigma * math.floor(math.log2(2 * n)))
    if algo == "hhr":
        _, _, m_sigma = prototype_constants(inst.k)
        n = inst.n_points
        return float(
            4
            * m_sigma
            * (inst.k + 1) ** 2
            * math.floor(math.log2(2 * inst.M))
            * math.floor(math.log2(2 * n))
        )
    return None


def relevant_objects(inst):
    """Objects an algorithm is accountable for: in the finite variant,
    objects containing no universe point are ignored by contract."""
    if inst.variant == "lattice":
        return list(inst.objects)
    return [
        o for o in inst.objects if any(object_contains(o, p) for p in inst.points)
    ]


def compute_opt(inst):
    objs = relevant_objects(inst)
    if not objs:
        return 0, []
    if inst.variant == "lattice":
        cands = candidates_for_lattice_variant(objs)
    else:
        cands = list(inst.points)
    sol = exact_min_hitting_set(HitInstance.from_objects(objs, cands))
    return len(sol), sol


def run_experiment(inst, config):
    """Yield one TrialReport per trial; raises BoundViolation if a proven
    bound is exceeded and InvariantViolation if some object ends unhit."""
    if inst.object_class != _expected_class(config.algo):
        raise GeomHitError(
            f"algorithm {config.algo} expects {_expected_class(config.algo)} instances"
        )
    opt = None
    if config.compute_opt:
        opt, _ = compute_opt(inst)
    bound = theorem_bound(config.algo, inst) if inst.objects else None
    runner = _RUNNERS[config.algo]
    accountable = relevant_objects(inst)
    for t in range(config.trials):
        seq = np.random.SeedSequence(entropy=config.seed, spawn_key=(t,))
        trial_seed = int(seq.generate_state(1)[0])
        t0 = time.perf_counter()
        cost, solution, counters = runner(inst, trial_seed)
        wall = time.perf_counter() - t0
        for i, obj in enumerate(accountable):
            if not any(object_contains(obj, p) for p in solution):
                raise InvariantViolation(f"object {i} left unhit by {config.algo}")
        ratio = None
        if opt:
            ratio = cost / opt
            if bound is not None and ratio > bound + 1e-9:
                raise BoundViolation(
                    f"{config.algo} ratio {ratio:.3f} exceeds proven bound {bound:.3f}"
                )
        yield TrialReport(
            algorithm=config.algo,
            seed=trial_seed,
            cost=cost,
            opt=opt,
            ratio=ratio,
            bound=bound,
            invariant_checks=counters,
            wall_time_s=wall,
        )
