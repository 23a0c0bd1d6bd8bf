"""Iterative solvers: ILS, VNS, an evolutionary algorithm and ant colony
optimization, all driven by the shared greedy seed, neighborhood operators
and budget-accounted tour evaluation.

Every solver is deterministic given its rng, records the best cost after
each outer iteration, and returns its best tour with directions recovered
by the DP.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .construct import greedy_construct
from .evaluate import (
    Budget,
    CostEvaluator,
    DirectedTour,
    Tour,
    dp_directions,
)
from .graph import DEPOT, Instance, ShortestPaths
from .local_search import (
    RELOCATE,
    REVERSE,
    SWAP,
    best_neighbor,
    perturb,
    perturbation_strength,
)

__all__ = [
    "Budget",
    "Population",
    "PheromoneTable",
    "SolveResult",
    "ils",
    "vns",
    "ea",
    "aco",
    "mix_crossover",
    "aco_sample",
    "init_pheromones",
]


@dataclass(frozen=True)
class SolveResult:
    best_tour: DirectedTour
    best_cost: float
    evals_used: int
    iters_done: int
    wall_seconds: float
    history: tuple[float, ...]


@dataclass
class Population:
    """EA population: unique tours sorted by ascending cost."""

    members: list[tuple[Tour, float]]

    @property
    def best(self) -> tuple[Tour, float]:
        return self.members[0]


def _select_unique(
    entries: list[tuple[Tour, float]], cap: int
) -> list[tuple[Tour, float]]:
    # Uniqueness is exact sequence equality; first occurrence wins, then the
    # stable sort keeps earlier entries ahead on cost ties.
    seen: set[Tour] = set()
    unique = []
    for tour, cost in entries:
        if tour not in seen:
            seen.add(tour)
            unique.append((tour, cost))
    unique.sort(key=lambda tc: tc[1])
    return unique[:cap]


def _seed(
    ev: CostEvaluator, instance: Instance, paths: ShortestPaths, budget: Budget
) -> tuple[Tour, float]:
    tour = greedy_construct(instance, paths, budget)
    cost = ev.one(tour)
    if cost is None:
        cost = ev.cost_uncounted(tour)
    return tour, cost


def _finish(
    instance: Instance,
    paths: ShortestPaths,
    budget: Budget,
    tour: Tour,
    iters: int,
    t0: float,
    history: list[float],
) -> SolveResult:
    directed = dp_directions(instance, paths, tour)
    return SolveResult(
        best_tour=directed,
        best_cost=directed.cost,
        evals_used=budget.evals_used,
        iters_done=iters,
        wall_seconds=time.perf_counter() - t0,
        history=tuple(history),
    )


_BEST_MOVE_ORDER = (RELOCATE, REVERSE, SWAP)
_FIRST_MOVE_ORDER = (SWAP, RELOCATE, REVERSE)


def _descend_best_move(
    ev: CostEvaluator, budget: Budget, tour: Tour, cost: float
) -> tuple[Tour, float]:
    # Apply the best move over all three operators, repeating until none of
    # them improves the current tour.
    while not budget.exhausted:
        best_t, best_c = tour, cost
        for kind in _BEST_MOVE_ORDER:
            t, c = best_neighbor(ev, tour, cost, kind)
            if c < best_c:
                best_t, best_c = t, c
        if best_c < cost:
            tour, cost = best_t, best_c
        else:
            break
    return tour, cost


def _descend_first_operator(
    ev: CostEvaluator, budget: Budget, tour: Tour, cost: float
) -> tuple[Tour, float]:
    # Scan operators in a fixed order and restart from the first one whose
    # best move improves; stop when none does.
    while not budget.exhausted:
        improved = False
        for kind in _FIRST_MOVE_ORDER:
            t, c = best_neighbor(ev, tour, cost, kind)
            if c < cost:
                tour, cost = t, c
                improved = True
                break
        if not improved:
            break
    return tour, cost


def _descend_single_operator(
    ev: CostEvaluator, budget: Budget, tour: Tour, cost: float, kind: str
) -> tuple[Tour, float]:
    # Repeat one operator's best-improvement scan until it stalls.
    while not budget.exhausted:
        t, c = best_neighbor(ev, tour, cost, kind)
        if c < cost:
            tour, cost = t, c
        else:
            break
    return tour, cost


def _perturb_and_descend(
    instance: Instance,
    paths: ShortestPaths,
    budget: Optional[Budget],
    rng: Optional[random.Random],
    descend: Callable[[CostEvaluator, Budget, Tour, float], tuple[Tour, float]],
) -> SolveResult:
    budget = budget if budget is not None else Budget()
    rng = rng if rng is not None else random.Random(0)
    t0 = time.perf_counter()
    ev = CostEvaluator(instance, paths, budget)
    best, best_cost = _seed(ev, instance, paths, budget)
    history = [best_cost]
    strength = perturbation_strength(instance.m)
    current = best
    iters = 0
    for _ in range(budget.max_iters):
        if budget.exhausted:
            break
        iters += 1
        current = perturb(current, strength, rng)
        cost = ev.one(current)
        if cost is None:
            current = best
            break
        current, cost = descend(ev, budget, current, cost)
        if cost < best_cost:
            best, best_cost = current, cost
        else:
            current = best
        history.append(best_cost)
    return _finish(instance, paths, budget, best, iters, t0, history)


def ils(
    instance: Instance,
    paths: ShortestPaths,
    budget: Optional[Budget] = None,
    rng: Optional[random.Random] = None,
) -> SolveResult:
    """Iterated local search: shake, then take the best move among the
    operators until stuck; keep the result only if it beats the incumbent."""
    return _perturb_and_descend(instance, paths, budget, rng, _descend_best_move)


def vns(
    instance: Instance,
    paths: ShortestPaths,
    budget: Optional[Budget] = None,
    rng: Optional[random.Random] = None,
) -> SolveResult:
    """Variable neighborhood search: like ILS but the descent applies the
    first improving operator in the order 2-exchange, relocation, reversal."""
    return _perturb_and_descend(instance, paths, budget, rng, _descend_first_operator)


def mix_crossover(parent_a: Tour, parent_b: Tour, rng: random.Random) -> Tour:
    """Randomly interleave two parent sequences into one child permutation.

    Each step draws which parent's cursor to consume; the edge is appended
    unless already taken and the cursor advances either way. Whatever is
    still missing when a cursor runs off the end is appended from parent a
    then parent b in order.
    """
    if sorted(parent_a) != sorted(parent_b):
        raise ValueError("parents must cover the same edge set")
    m = len(parent_a)
    child: list[int] = []
    have: set[int] = set()
    s = t = 0
    while s < m and t < m and len(child) < m:
        if rng.randrange(2) == 0:
            e = parent_a[s]
            s += 1
        else:
            e = parent_b[t]
            t += 1
        if e not in have:
            child.append(e)
            have.add(e)
    for e in parent_a + parent_b:
        if e not in have:
            child.append(e)
            have.add(e)
    return tuple(child)


def ea(
    instance: Instance,
    paths: ShortestPaths,
    budget: Optional[Budget] = None,
    rng: Optional[random.Random] = None,
    p_max: int = 10,
    inspect: Optional[Callable[[Population], None]] = None,
) -> SolveResult:
    """Evolutionary algorithm over edge permutations.

    The population starts from the greedy tour plus perturbed copies. Each
    generation every member is crossed with a random distinct mate, then
    mutated: the member is shaken by random swaps and each operator descends
    from the shaken copy, giving three offspring per member. The best unique
    p_max of parents and offspring survive. ``inspect``, when given, receives
    the population at every generation boundary.
    """
    if p_max < 2:
        raise ValueError("p_max must be >= 2")
    budget = budget if budget is not None else Budget()
    rng = rng if rng is not None else random.Random(0)
    t0 = time.perf_counter()
    ev = CostEvaluator(instance, paths, budget)
    seed, seed_cost = _seed(ev, instance, paths, budget)
    strength = perturbation_strength(instance.m)
    entries = [(seed, seed_cost)]
    for _ in range(p_max - 1):
        tour = perturb(seed, strength, rng)
        cost = ev.one(tour)
        if cost is None:
            break
        entries.append((tour, cost))
    pop = _select_unique(entries, p_max)
    history = [pop[0][1]]
    iters = 0
    for _ in range(budget.max_iters):
        if budget.exhausted:
            break
        iters += 1
        offspring: list[tuple[Tour, float]] = []
        if len(pop) >= 2:
            for i, (tour, _) in enumerate(pop):
                j = rng.randrange(len(pop) - 1)
                if j >= i:
                    j += 1
                child = mix_crossover(tour, pop[j][0], rng)
                cost = ev.one(child)
                if cost is None:
                    break
                offspring.append((child, cost))
        for tour, _ in pop:
            if budget.exhausted:
                break
            shaken = perturb(tour, strength, rng)
            shaken_cost = ev.one(shaken)
            if shaken_cost is None:
                break
            for kind in (RELOCATE, REVERSE, SWAP):
                offspring.append(
                    _descend_single_operator(ev, budget, shaken, shaken_cost, kind)
                )
        pop = _select_unique(pop + offspring, p_max)
        if inspect is not None:
            inspect(Population(list(pop)))
        history.append(pop[0][1])
    return _finish(instance, paths, budget, pop[0][0], iters, t0, history)


@dataclass
class PheromoneTable:
    """ACO trail and attractiveness tables.

    Rows index the 2m+1 states (row 0 = start state at the depot, then
    (edge, direction) pairs); columns index the 2m service states. ``eta``
    is fixed at construction, ``tau`` evolves by evaporation and deposits.
    """

    m: int
    tau: np.ndarray
    eta: np.ndarray
    rho: float = 0.8
    C: float = 1.0
    eps: float = 0.001

    @staticmethod
    def row(eid: int, direction: int) -> int:
        return 2 * (eid - 1) + (direction - 1) + 1

    @staticmethod
    def col(eid: int, direction: int) -> int:
        return 2 * (eid - 1) + (direction - 1)


def init_pheromones(
    instance: Instance,
    paths: ShortestPaths,
    rho: float = 0.8,
    C: float = 1.0,
    eps: float = 0.001,
    eta_mode: str = "paper",
) -> PheromoneTable:
    """Uniform trails plus a cost-shaped attractiveness prior.

    The prior for entering service state y = (edge e, direction) from state
    x is sqrt((W + q_e) * D[depart(x), entry(y)] + (W + q_e/2) * d_e); from
    the start state the full initial load replaces q_e. ``eta_mode``
    'inverse' flips the prior to 1/sqrt so cheaper moves attract more.
    """
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must be in (0, 1)")
    if eta_mode not in ("paper", "inverse"):
        raise ValueError(f"unknown eta_mode {eta_mode!r}")
    m = instance.m
    W = instance.W
    D = paths.D
    Q = sum(e.q for e in instance.edges)
    vals = np.zeros((2 * m + 1, 2 * m))
    entries = np.zeros(2 * m, dtype=np.int64)
    for eid, e in enumerate(instance.edges, start=1):
        entries[PheromoneTable.col(eid, 1)] = e.u
        entries[PheromoneTable.col(eid, 2)] = e.v
    for col in range(2 * m):
        eid = col // 2 + 1
        e = instance.edges[eid - 1]
        entry = entries[col]
        vals[0, col] = (W + Q) * D[DEPOT, entry] + (W + Q - e.q * 0.5) * e.d
        base = (W + e.q * 0.5) * e.d
        move = W + e.q
        for src_eid, src in enumerate(instance.edges, start=1):
            vals[PheromoneTable.row(src_eid, 1), col] = move * D[src.v, entry] + base
            vals[PheromoneTable.row(src_eid, 2), col] = move * D[src.u, entry] + base
    vals = np.maximum(vals, 1e-12)
    eta = np.sqrt(vals) if eta_mode == "paper" else 1.0 / np.sqrt(vals)
    eta.flags.writeable = False
    tau = np.full((2 * m + 1, 2 * m), float(eps))
    return PheromoneTable(m=m, tau=tau, eta=eta, rho=rho, C=C, eps=eps)


def aco_sample(
    instance: Instance,
    paths: ShortestPaths,
    table: PheromoneTable,
    rng: random.Random,
) -> list[tuple[int, int]]:
    """Sample one directed state sequence; probabilities follow tau * eta
    over both directions of every unserviced edge."""
    avail = list(range(1, instance.m + 1))
    seq: list[tuple[int, int]] = []
    row = 0
    tau = table.tau
    eta = table.eta
    for _ in range(instance.m):
        weights = []
        states = []
        for eid in avail:
            for d in (1, 2):
                col = PheromoneTable.col(eid, d)
                weights.append(tau[row, col] * eta[row, col])
                states.append((eid, d))
        total = sum(weights)
        r = rng.random() * total
        acc = 0.0
        pick = len(states) - 1
        for idx, w in enumerate(weights):
            acc += w
            if r < acc:
                pick = idx
                break
        eid, d = states[pick]
        seq.append((eid, d))
        avail.remove(eid)
        row = PheromoneTable.row(eid, d)
    return seq


def aco(
    instance: Instance,
    paths: ShortestPaths,
    budget: Optional[Budget] = None,
    rng: Optional[random.Random] = None,
    p_max: int = 10,
    eta_mode: str = "paper",
    table: Optional[PheromoneTable] = None,
) -> SolveResult:
    """Ant colony optimization over directed service states.

    Each iteration p_max ants sample a state sequence; the tour cost is the
    DP value of the sampled edge order (directions re-optimized), and trails
    evaporate by (1 - rho) before each ant deposits C/sqrt(cost) on its
    transitions. The greedy tour seeds the incumbent. A caller-provided
    ``table`` is used (and mutated) in place of a freshly initialized one.
    """
    budget = budget if budget is not None else Budget()
    rng = rng if rng is not None else random.Random(0)
    t0 = time.perf_counter()
    ev = CostEvaluator(instance, paths, budget)
    if table is None:
        table = init_pheromones(instance, paths, eta_mode=eta_mode)
    best, best_cost = _seed(ev, instance, paths, budget)
    history = [best_cost]
    iters = 0
    for _ in range(budget.max_iters):
        if budget.exhausted:
            break
        iters += 1
        ants: list[tuple[list[tuple[int, int]], float]] = []
        for _ant in range(p_max):
            if budget.exhausted:
                break
            states = aco_sample(instance, paths, table, rng)
            order = tuple(eid for eid, _ in states)
            cost = ev.one(order)
            if cost is None:
                break
            ants.append((states, cost))
            if cost < best_cost:
                best, best_cost = order, cost
        if not ants:
            break
        table.tau *= 1.0 - table.rho
        for states, cost in ants:
            deposit = table.C / math.sqrt(cost)
            row = 0
            for eid, d in states:
                table.tau[row, PheromoneTable.col(eid, d)] += deposit
                row = PheromoneTable.row(eid, d)
        history.append(best_cost)
    return _finish(instance, paths, budget, best, iters, t0, history)
