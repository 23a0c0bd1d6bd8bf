"""Benchmark harness: run solver/seed grids over instance files and report
mean objective, gap and wall time per algorithm."""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .construct import greedy_construct
from .evaluate import Budget, dp_directions
from .fileio import read_instance
from .graph import all_pairs_shortest_paths, require_valid
from .metaheuristics import SolveResult, aco, ea, ils, vns
from .oracle import exact_optimum

CSV_HEADER = "instance,alg,seed,cost,evals,seconds"

ALGORITHMS = ("ghc", "ils", "vns", "ea", "aco", "exact")


@dataclass(frozen=True)
class BenchRow:
    instance: str
    alg: str
    seed: int
    cost: float
    evals: int
    seconds: float


def solve_one(
    instance_path: str,
    alg: str,
    seed: int,
    max_iters: int = 100,
    max_evals: Optional[int] = None,
    p_max: int = 10,
    eta_mode: str = "paper",
) -> SolveResult:
    """Load, precompute and solve; wall time covers the solve only."""
    instance = read_instance(instance_path)
    require_valid(instance)
    paths = all_pairs_shortest_paths(instance)
    budget = Budget(max_iters=max_iters, max_evals=max_evals)
    rng = random.Random(seed)
    if alg == "ghc":
        t0 = time.perf_counter()
        tour = greedy_construct(instance, paths, budget)
        directed = dp_directions(instance, paths, tour)
        return SolveResult(
            best_tour=directed,
            best_cost=directed.cost,
            evals_used=budget.evals_used,
            iters_done=0,
            wall_seconds=time.perf_counter() - t0,
            history=(directed.cost,),
        )
    if alg == "ils":
        return ils(instance, paths, budget, rng)
    if alg == "vns":
        return vns(instance, paths, budget, rng)
    if alg == "ea":
        return ea(instance, paths, budget, rng, p_max=p_max)
    if alg == "aco":
        return aco(instance, paths, budget, rng, p_max=p_max, eta_mode=eta_mode)
    if alg == "exact":
        return exact_optimum(instance, paths)
    raise ValueError(f"unknown algorithm {alg!r}")


def _bench_cell(args) -> BenchRow:
    path, alg, seed, max_iters, max_evals, p_max, eta_mode, timing = args
    result = solve_one(path, alg, seed, max_iters, max_evals, p_max, eta_mode)
    seconds = 0.0 if timing == "zero" else result.wall_seconds
    return BenchRow(
        instance=os.path.basename(path),
        alg=alg,
        seed=seed,
        cost=result.best_cost,
        evals=result.evals_used,
        seconds=seconds,
    )


def worker_count() -> int:
    raw = os.environ.get("CPPLC_THREADS", "")
    if raw.strip():
        return max(1, int(raw))
    return max(1, os.cpu_count() or 1)


def run_bench(
    instance_paths: Sequence[str],
    algs: Sequence[str],
    seeds: Sequence[int],
    max_iters: int = 100,
    max_evals: Optional[int] = None,
    p_max: int = 10,
    eta_mode: str = "paper",
    gap_ref: str = "best",
    timing: str = "wall",
) -> tuple[list[BenchRow], dict[str, float], list[str]]:
    """Run every (instance, alg, seed) cell.

    Returns rows in deterministic cell order, per-instance reference costs
    for the gap, and warnings for skipped instances. ``gap_ref`` 'exact'
    scores gaps against the exhaustive optimum (instances must be small
    enough), otherwise against the best cost any cell achieved.
    """
    usable: list[str] = []
    warnings: list[str] = []
    for path in instance_paths:
        try:
            instance = read_instance(path)
            require_valid(instance)
            if gap_ref == "exact" and instance.m > 9:
                raise ValueError(f"m={instance.m} too large for --gap-ref exact")
        except Exception as exc:  # noqa: BLE001 - report and skip
            warnings.append(f"skipping {path}: {exc}")
            continue
        usable.append(path)
    cells = [
        (path, alg, seed, max_iters, max_evals, p_max, eta_mode, timing)
        for path in usable
        for alg in algs
        for seed in seeds
    ]
    workers = worker_count()
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_bench_cell, cells))
    else:
        rows = [_bench_cell(c) for c in cells]
    reference: dict[str, float] = {}
    if gap_ref == "exact":
        for path in usable:
            instance = read_instance(path)
            paths = all_pairs_shortest_paths(instance)
            reference[os.path.basename(path)] = exact_optimum(instance, paths).best_cost
    else:
        for row in rows:
            cur = reference.get(row.instance)
            if cur is None or row.cost < cur:
                reference[row.instance] = row.cost
    return rows, reference, warnings


def gap_percent(cost: float, reference: float) -> float:
    if reference == 0:
        return 0.0
    return 100.0 * (cost - reference) / reference


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    lines = [CSV_HEADER]
    lines.extend(
        f"{r.instance},{r.alg},{r.seed},{r.cost:.6f},{r.evals},{r.seconds:.6f}"
        for r in rows
    )
    return "\n".join(lines) + "\n"


def summary_table(rows: Sequence[BenchRow], reference: dict[str, float]) -> str:
    """Aligned text table of mean objective, gap percent and seconds per alg."""
    algs: list[str] = []
    for row in rows:
        if row.alg not in algs:
            algs.append(row.alg)
    lines = [f"{'alg':<8}{'obj':>16}{'gap%':>10}{'time(s)':>12}{'cells':>8}"]
    for alg in algs:
        cells = [r for r in rows if r.alg == alg]
        obj = sum(r.cost for r in cells) / len(cells)
        gap = sum(gap_percent(r.cost, reference[r.instance]) for r in cells) / len(cells)
        secs = sum(r.seconds for r in cells) / len(cells)
        lines.append(f"{alg:<8}{obj:>16.2f}{gap:>10.2f}{secs:>12.3f}{len(cells):>8}")
    return "\n".join(lines)
