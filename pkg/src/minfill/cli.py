"""Command-line front end.

    minfill solve instance.json [--denegativize] [--per-topology] [--jobs K]
    minfill examples
    minfill campaign --sizes 3,4,5 --count 100 --seed 42 --class metric
    minfill enumerate --n 5 [--list]
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .campaign import CHECKS, CLASS_NAMES, CampaignConfig, ConfigError, run_campaign
from .denegativize import DenegativizeError, remove_negative_edges
from .filling import total_weight
from .metric_space import SpaceError, load_space
from .solver import SizeLimitError, max_n, solve_space
from .topology import TopologyError, count_binary_trees, enumerate_binary_trees
from .worked_examples import run_examples

EXIT_INPUT = 2
EXIT_LIMIT = 3


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _check_list(text: str) -> list:
    names = [x.strip() for x in text.split(",") if x.strip()]
    bad = [x for x in names if x not in CHECKS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    return names


def cmd_solve(args) -> int:
    try:
        space = load_space(args.file)
    except (OSError, SpaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = solve_space(space, jobs=args.jobs)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except TopologyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = report.to_json_obj(per_topology=args.per_topology)
    if args.denegativize:
        f = report.mf_minus_filling
        try:
            g, steps = remove_negative_edges(f, space)
        except DenegativizeError as exc:
            out["denegativized"] = None
            out["denegativize_error"] = str(exc)
        else:
            out["denegativized"] = g.to_json_obj()
            out["denegativized_weight"] = str(total_weight(g))
            out["steps"] = [s.to_json_obj() for s in steps]
    print(json.dumps(out, indent=2))
    return 0


def cmd_examples(args) -> int:
    lines = run_examples(corrupt=args.corrupt)
    for line in lines:
        print(line.render())
    return 0 if all(line.passed for line in lines) else 1


def cmd_campaign(args) -> int:
    try:
        config = CampaignConfig(
            sizes=tuple(args.sizes),
            instances_per_size=args.count,
            seed=args.seed,
            space_class=args.space_class,
            checks=tuple(args.checks) if args.checks else CHECKS,
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    report = run_campaign(config, jobs=args.jobs)
    elapsed = time.perf_counter() - start
    print(report.to_json())
    # stdout stays byte-identical across runs; timing goes to stderr
    print(f"{len(report.results)} instances, {len(report.failures)} failures, "
          f"{elapsed:.1f}s", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_enumerate(args) -> int:
    if args.n < 2:
        print("error: n must be at least 2", file=sys.stderr)
        return EXIT_INPUT
    if args.n > max_n():
        print(f"error: n={args.n} exceeds the limit of {max_n()}", file=sys.stderr)
        return EXIT_LIMIT
    labels = [f"p{i}" for i in range(args.n)]
    if args.list:
        count = 0
        for tree in enumerate_binary_trees(labels):
            print(json.dumps(tree.to_json_obj()))
            count += 1
    else:
        count = count_binary_trees(args.n)
    print(f"{count} binary tree types on {args.n} boundary points")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minfill",
        description="Exact minimal fillings of finite pseudometric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance file")
    p.add_argument("file")
    p.add_argument("--denegativize", action="store_true",
                   help="rewire the signed optimum into a non-negative one")
    p.add_argument("--per-topology", action="store_true",
                   help="include the value of every tree type")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("examples", help="reproduce the built-in worked examples")
    p.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("campaign", help="seeded randomized verification")
    p.add_argument("--sizes", type=_int_list, default=[3, 4, 5])
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--class", dest="space_class", choices=sorted(CLASS_NAMES), default="metric")
    p.add_argument("--checks", type=_check_list, default=None,
                   help=f"comma-separated subset of {','.join(CHECKS)}")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("enumerate", help="count binary tree types")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true", help="print every type as JSON")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
