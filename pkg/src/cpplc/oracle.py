"""Exhaustive exact solvers: ground truth for tests and gap reporting."""

from __future__ import annotations

import time
from typing import Optional, Sequence

from .evaluate import Tour, check_tour, dp_directions, evaluate_directed
from .graph import DEPOT, Instance, ShortestPaths
from .metaheuristics import SolveResult


class SizeLimitError(ValueError):
    """Instance too large for exhaustive search."""


def direction_bruteforce(
    instance: Instance,
    paths: ShortestPaths,
    tour: Sequence[int],
    limit: int = 14,
) -> float:
    """Minimum directed cost over all 2^m direction vectors of the tour."""
    check_tour(instance, tour)
    m = instance.m
    if m > limit:
        raise SizeLimitError(f"m={m} exceeds direction enumeration limit {limit}")
    best = float("inf")
    dirs = [1] * m
    for bits in range(1 << m):
        for k in range(m):
            dirs[k] = 1 + ((bits >> k) & 1)
        cost = evaluate_directed(instance, paths, zip(tour, dirs))
        if cost < best:
            best = cost
    return best


def exact_optimum(
    instance: Instance,
    paths: ShortestPaths,
    limit: int = 9,
) -> SolveResult:
    """Exact minimum over all m! edge orders (directions handled by the DP).

    Depth-first search in lexicographic edge-id order with lower-bound
    pruning, so the first optimum found is the lexicographically smallest
    optimal permutation. The bound adds each unplaced edge's cheapest
    possible service cost (load at least its own demand) to the cost of the
    placed prefix.
    """
    m = instance.m
    if m > limit:
        raise SizeLimitError(f"m={m} exceeds permutation enumeration limit {limit}")
    t0 = time.perf_counter()
    edges = instance.edges
    D = paths.D
    W = instance.W
    total = sum(e.q for e in edges)
    service_lb = [0.0] * (m + 1)
    for eid, e in enumerate(edges, start=1):
        service_lb[eid] = (W + e.q * 0.5) * e.d

    best_cost = float("inf")
    best_perm: Optional[Tour] = None
    used = [False] * (m + 1)
    prefix: list[int] = []
    leaves = 0
    history: list[float] = []

    def rec(g1: float, g2: float, exit1: int, exit2: int, served: float, lb_rest: float) -> None:
        nonlocal best_cost, best_perm, leaves
        depth = len(prefix)
        if depth == m:
            leaves += 1
            cost = min(g1 + W * D[exit1, DEPOT], g2 + W * D[exit2, DEPOT])
            if cost < best_cost:
                best_cost = cost
                best_perm = tuple(prefix)
                history.append(cost)
            return
        load = total - served
        for eid in range(1, m + 1):
            if used[eid]:
                continue
            e = edges[eid - 1]
            service = (W + load - e.q * 0.5) * e.d
            move = W + load
            if depth == 0:
                enter_u = move * D[DEPOT, e.u]
                enter_v = move * D[DEPOT, e.v]
            else:
                enter_u = min(g1 + move * D[exit1, e.u], g2 + move * D[exit2, e.u])
                enter_v = min(g1 + move * D[exit1, e.v], g2 + move * D[exit2, e.v])
            n1 = service + enter_u
            n2 = service + enter_v
            rest = lb_rest - service_lb[eid]
            if min(n1, n2) + rest >= best_cost:
                continue
            used[eid] = True
            prefix.append(eid)
            rec(n1, n2, e.v, e.u, served + e.q, rest)
            prefix.pop()
            used[eid] = False

    rec(0.0, 0.0, DEPOT, DEPOT, 0.0, sum(service_lb))
    assert best_perm is not None
    directed = dp_directions(instance, paths, best_perm)
    running = []
    incumbent = float("inf")
    for c in history:
        incumbent = min(incumbent, c)
        running.append(incumbent)
    return SolveResult(
        best_tour=directed,
        best_cost=directed.cost,
        evals_used=leaves,
        iters_done=leaves,
        wall_seconds=time.perf_counter() - t0,
        history=tuple(running),
    )
