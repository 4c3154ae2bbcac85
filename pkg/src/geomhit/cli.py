"""Command-line harness.

Subcommands: gen, run, offline, adversary, plot, check.  Exit status 0
means every check passed; 2 means a proven bound or a lemma invariant was
violated; 1 is any other error.
"""

import argparse
import json
import sys

import numpy as np

from . import adversary, checks
from .errors import GeomHitError, InvariantViolation
from .experiments import RunConfig, compute_opt, run_experiment
from .instances import GeneratorSpec, generate_random_instance, read_instance, write_instance
from .plots import emit_plots


def _cmd_gen(args):
    spec = GeneratorSpec(
        object_class=args.object_class,
        d=args.d,
        M=args.M,
        count=args.count,
        low=args.low,
        high=args.high,
        k=args.k,
        n_points=args.points,
        fat_kinds=tuple(args.fat_kinds.split(",")),
        size_mode="fixed" if args.fixed_size else "loguniform",
        fixed_size=args.fixed_size,
    )
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=args.seed)))
    inst = generate_random_instance(spec, rng)
    write_instance(inst, args.out)
    print(f"wrote {args.out}: {len(inst.objects)} objects")
    return 0


def _cmd_run(args):
    inst = read_instance(args.instance)
    config = RunConfig(
        algo=args.algo, seed=args.seed, trials=args.trials, compute_opt=args.opt
    )
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for report in run_experiment(inst, config):
            print(report.to_json(), file=out)
    finally:
        if args.out:
            out.close()
    return 0


def _cmd_offline(args):
    inst = read_instance(args.instance)
    opt, sol = compute_opt(inst)
    print(json.dumps({"opt": opt, "points": [list(p) for p in sol]}, sort_keys=True))
    return 0


def _cmd_adversary(args):
    makers = {
        "greedy": lambda seed: adversary.GreedyCenterHitter(args.d),
        "lir": lambda seed: adversary.LirHitter(args.d, args.M, seed),
    }
    if args.algo == "oracle":
        mean, se = 1.0, 0.0
        rng = np.random.Generator(np.random.PCG64(args.seed))
        for _ in range(min(args.trials, 100)):
            adversary.verify_path(adversary.sample_path(args.d, args.M, rng))
    else:
        mean, se = adversary.measure_expected_cost(
            makers[args.algo], args.d, args.M, args.trials, args.seed
        )
    floor = adversary.cost_floor(args.d, args.M)
    print(
        json.dumps(
            {
                "algorithm": args.algo,
                "d": args.d,
                "M": args.M,
                "trials": args.trials,
                "mean_cost": mean,
                "stderr": se,
                "expected_cost_floor": floor,
            },
            sort_keys=True,
        )
    )
    return 0


def _cmd_plot(args):
    reports = []
    with open(args.reports) as fh:
        for line in fh:
            if line.strip():
                reports.append(json.loads(line))
    written = emit_plots(reports, args.out)
    for path in written:
        print(f"wrote {path}")
    return 0


_SUITES = {
    "angle": lambda t, s: checks.check_angle_property(trials=max(t // 5, 1), seed=s),
    "observation4": lambda t, s: checks.check_observation4(trials=t, seed=s),
    "convex": lambda t, s: checks.check_convex_distance_properties(trials=t, seed=s),
    "lattice": lambda t, s: checks.check_lattice_bracket(trials=t, seed=s),
    "rounding": lambda t, s: checks.check_anc_round_closest(trials=t, seed=s),
    "core": lambda t, s: checks.check_core_equality(trials_per_layer=max(t // 10, 1), seed=s),
    "layer-window": lambda t, s: checks.check_layer_window(trials_per_layer=max(t // 10, 1), seed=s),
    "observation3": lambda t, s: checks.check_observation3(trials=t, seed=s),
    "tiles": lambda t, s: checks.check_tile_bound(4, trials=t, seed=s),
    "cone": lambda t, s: checks.check_cone(),
    "interval": lambda t, s: checks.check_interval(trials=t, seed=s),
    "component-cone": lambda t, s: checks.check_component_cone(trials=t, seed=s),
    "ranking": lambda t, s: checks.check_vertex_ranking(),
    "coverage": lambda t, s: checks.check_shrunk_coverage(
        homothets=max(t // 100, 1), samples=1000, seed=s
    ),
    "adversary": lambda t, s: checks.check_adversary(trials=t, seed=s),
    "es-inline": lambda t, s: checks.check_es_inline(objects=t, seed=s),
}


def _cmd_check(args):
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        result = _SUITES[name](args.trials, args.seed)
        status = "PASS" if result.passed else "FAIL"
        extra = f" {result.extra}" if result.extra else ""
        print(f"[{status}] {result.name}: {result.checks} checks{extra}")
        for v in result.violations[:5]:
            print(f"    violation: {v}")
        failed = failed or not result.passed
    return 2 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(prog="geomhit")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random instance file")
    g.add_argument("--class", dest="object_class", required=True,
                   choices=("hypercube", "fat", "kgon"))
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--M", type=float, default=8.0)
    g.add_argument("--count", type=int, default=100)
    g.add_argument("--k", type=int, default=None)
    g.add_argument("--points", type=int, default=0)
    g.add_argument("--low", type=float, default=0.0)
    g.add_argument("--high", type=float, default=20.0)
    g.add_argument("--fat-kinds", default="linf_ball")
    g.add_argument("--fixed-size", type=float, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen)

    r = sub.add_parser("run", help="replay an instance through an algorithm")
    r.add_argument("--instance", required=True)
    r.add_argument("--algo", required=True, choices=("lir", "anc", "es", "hhr"))
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--trials", type=int, default=1)
    r.add_argument("--opt", action=argparse.BooleanOptionalAction, default=True)
    r.add_argument("--out", default=None)
    r.set_defaults(func=_cmd_run)

    o = sub.add_parser("offline", help="exact offline optimum of an instance")
    o.add_argument("--instance", required=True)
    o.set_defaults(func=_cmd_offline)

    a = sub.add_parser("adversary", help="Monte Carlo cost on adversary paths")
    a.add_argument("--d", type=int, default=2)
    a.add_argument("--M", type=float, default=16)
    a.add_argument("--algo", default="greedy", choices=("greedy", "lir", "oracle"))
    a.add_argument("--trials", type=int, default=1000)
    a.add_argument("--seed", type=int, default=0)
    a.set_defaults(func=_cmd_adversary)

    p = sub.add_parser("plot", help="render ratio plots from report files")
    p.add_argument("--reports", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_plot)

    c = sub.add_parser("check", help="run invariant suites")
    c.add_argument("--suite", default="all", choices=["all", *sorted(_SUITES)])
    c.add_argument("--trials", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=_cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 2
    except GeomHitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
