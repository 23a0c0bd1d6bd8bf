"""Command-line front end: generate instances, check solution files, run a
single solver, or benchmark a directory of instances.

Exit codes: 0 ok, 1 runtime error, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import bench as bench_mod
from .evaluate import InvalidTourError, dp_cost, evaluate_directed
from .fileio import ParseError, read_instance, read_solution, write_instance, write_solution
from .generate import generate
from .graph import InvalidInstanceError, all_pairs_shortest_paths, require_valid
from .oracle import SizeLimitError

OK, RUNTIME_ERROR, INVALID_INPUT = 0, 1, 2

W_FLAGS = {"0": "zero", "halfQ": "halfQ", "fiveQ": "fiveQ"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpplc")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate benchmark instances")
    gen.add_argument("--n", type=int, required=True, help="node count")
    gen.add_argument("--density", type=float, default=0.4)
    gen.add_argument("--demand", choices=("prop", "rand"), default="rand")
    gen.add_argument("--w", choices=tuple(W_FLAGS), default="halfQ")
    gen.add_argument("--eulerian", action="store_true")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--out-dir", required=True)

    cost = sub.add_parser("cost", help="evaluate and verify a solution file")
    cost.add_argument("instance")
    cost.add_argument("solution")

    solve = sub.add_parser("solve", help="solve one instance")
    solve.add_argument("instance")
    solve.add_argument("--alg", choices=bench_mod.ALGORITHMS, default="ea")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--iters", type=int, default=100)
    solve.add_argument("--max-evals", type=int, default=None)
    solve.add_argument("--pop", type=int, default=10)
    solve.add_argument("--aco-eta", choices=("paper", "inverse"), default="paper")
    solve.add_argument("--out", default=None, help="write CPPLC-SOL file here")

    run = sub.add_parser("bench", help="benchmark a directory of instances")
    run.add_argument("instance_dir")
    run.add_argument("--algs", default="ghc,ils,vns,ea", help="comma-separated")
    run.add_argument("--seeds", default="0", help="comma-separated")
    run.add_argument("--iters", type=int, default=100)
    run.add_argument("--max-evals", type=int, default=None)
    run.add_argument("--pop", type=int, default=10)
    run.add_argument("--aco-eta", choices=("paper", "inverse"), default="paper")
    run.add_argument("--gap-ref", choices=("best", "exact"), default="best")
    run.add_argument("--csv", default=None, help="write raw rows here")
    run.add_argument(
        "--timing",
        choices=("wall", "zero"),
        default="wall",
        help="'zero' writes 0 in the seconds column for byte-reproducible output",
    )
    return parser


def _cmd_gen(args) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    demand_mode = "proportional" if args.demand == "prop" else "random"
    for i in range(args.count):
        instance = generate(
            n=args.n,
            density=args.density,
            demand_mode=demand_mode,
            w_mode=W_FLAGS[args.w],
            eulerian=args.eulerian,
            seed=args.seed + i,
        )
        name = f"inst_{args.seed + i:04d}.cpplc"
        write_instance(instance, os.path.join(args.out_dir, name))
        print(name)
    return OK


def _cmd_cost(args) -> int:
    instance = read_instance(args.instance)
    require_valid(instance)
    paths = all_pairs_shortest_paths(instance)
    solution = read_solution(args.solution)
    order = solution.order
    order_cost = dp_cost(instance, paths, order)
    directed_cost = evaluate_directed(instance, paths, solution)
    tol = max(1e-6, 1e-9 * abs(directed_cost))
    matches = abs(solution.cost - directed_cost) <= tol
    print(f"dp_cost {order_cost:.6f}")
    print(f"directed_cost {directed_cost:.6f}")
    print(f"stated_cost {solution.cost:.6f}")
    print("verdict " + ("ok" if matches else "mismatch"))
    return OK if matches else INVALID_INPUT


def _cmd_solve(args) -> int:
    result = bench_mod.solve_one(
        args.instance,
        alg=args.alg,
        seed=args.seed,
        max_iters=args.iters,
        max_evals=args.max_evals,
        p_max=args.pop,
        eta_mode=args.aco_eta,
    )
    if args.out:
        write_solution(result.best_tour, args.out)
    stats = {
        "cost": round(result.best_cost, 6),
        "evals": result.evals_used,
        "seconds": round(result.wall_seconds, 6),
    }
    print(json.dumps(stats))
    return OK


def _cmd_bench(args) -> int:
    names = sorted(
        f for f in os.listdir(args.instance_dir) if f.endswith(".cpplc")
    )
    if not names:
        print(f"no .cpplc instances in {args.instance_dir}", file=sys.stderr)
        return INVALID_INPUT
    algs = [a.strip() for a in args.algs.split(",") if a.strip()]
    for alg in algs:
        if alg not in bench_mod.ALGORITHMS:
            print(f"unknown algorithm {alg!r}", file=sys.stderr)
            return INVALID_INPUT
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    rows, reference, warnings = bench_mod.run_bench(
        [os.path.join(args.instance_dir, f) for f in names],
        algs=algs,
        seeds=seeds,
        max_iters=args.iters,
        max_evals=args.max_evals,
        p_max=args.pop,
        eta_mode=args.aco_eta,
        gap_ref=args.gap_ref,
        timing=args.timing,
    )
    for warning in warnings:
        print(warning, file=sys.stderr)
    if args.csv:
        with open(args.csv, "w", newline="\n") as fh:
            fh.write(bench_mod.rows_to_csv(rows))
    if rows:
        print(bench_mod.summary_table(rows, reference))
    return INVALID_INPUT if warnings else OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "gen": _cmd_gen,
        "cost": _cmd_cost,
        "solve": _cmd_solve,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except (ParseError, InvalidInstanceError, InvalidTourError, SizeLimitError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID_INPUT
    except Exception as exc:  # noqa: BLE001 - surface as runtime failure
        print(f"runtime error: {exc}", file=sys.stderr)
        return RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
