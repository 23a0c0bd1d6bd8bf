"""Tour-cost evaluation.

A solution is an order over edge ids; traversal directions and deadhead legs
are recovered by a backward dynamic program whose per-edge work is constant,
so evaluating a tour costs O(m) once shortest paths are precomputed.

Cost model: servicing edge e with load Q on board costs (W + Q - q_e/2) * d_e
(the demand q_e is unloaded along the way); deadheading a leg with load Q
costs (W + Q) * length, with deadhead legs taken along shortest paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .graph import DEPOT, Instance, ShortestPaths

Tour = tuple[int, ...]


class InvalidTourError(ValueError):
    pass


@dataclass(frozen=True)
class DirectedTour:
    """Edge order with per-edge direction (1 = u->v, 2 = v->u) and its cost."""

    seq: tuple[tuple[int, int], ...]
    cost: float

    @property
    def order(self) -> Tour:
        return tuple(eid for eid, _ in self.seq)


@dataclass(frozen=True)
class WalkStep:
    """One hop of the expanded closed walk; service=False means deadheading."""

    u: int
    v: int
    service: bool
    edge_id: Optional[int] = None


@dataclass
class Budget:
    """Stopping knobs shared by the iterative solvers.

    ``max_iters`` caps outer iterations. ``max_evals``, when set, caps the
    number of tour-cost evaluations spent on candidate moves, sampled ants
    and acceptance checks combined; ``evals_used`` never exceeds it.
    """

    max_iters: int = 100
    max_evals: Optional[int] = None
    evals_used: int = 0

    def take(self, k: int = 1) -> int:
        """Consume up to k evaluations; returns how many were granted."""
        if self.max_evals is None:
            self.evals_used += k
            return k
        grant = max(0, min(k, self.max_evals - self.evals_used))
        self.evals_used += grant
        return grant

    @property
    def exhausted(self) -> bool:
        return self.max_evals is not None and self.evals_used >= self.max_evals


def check_tour(instance: Instance, seq: Sequence[int]) -> None:
    """Validate that seq is a permutation of all edge ids of the instance."""
    if len(seq) != instance.m:
        raise InvalidTourError(
            f"tour has {len(seq)} edges, instance has {instance.m} (missing or extra ids)"
        )
    seen = [False] * (instance.m + 1)
    for eid in seq:
        if not 1 <= eid <= instance.m:
            raise InvalidTourError(f"edge id {eid} out of range")
        if seen[eid]:
            raise InvalidTourError(f"duplicate edge id {eid}")
        seen[eid] = True


def _seq_loads(instance: Instance, seq: Sequence[int]) -> list[float]:
    # Load just before servicing the k-th edge; works for partial sequences
    # (the vehicle carries exactly the demand of the edges it will serve).
    total = sum(instance.edges[eid - 1].q for eid in seq)
    loads = []
    served = 0.0
    for eid in seq:
        loads.append(total - served)
        served += instance.edges[eid - 1].q
    return loads


def load_prefixes(instance: Instance, tour: Sequence[int]) -> list[float]:
    """Load on board just before servicing each edge of a full tour."""
    check_tour(instance, tour)
    return _seq_loads(instance, tour)


def _dp(instance: Instance, paths: ShortestPaths, seq: Sequence[int]):
    """Backward recursion over the sequence; returns (cost, choices, branches).

    ``choices[k][p]`` is the direction chosen for seq[k] when the previous
    edge was traversed in direction p+1; ties prefer direction 1. The cost
    is the minimum over all 2^K direction assignments.
    """
    edges = instance.edges
    D = paths.D
    W = instance.W
    K = len(seq)
    loads = _seq_loads(instance, seq)
    choices = [[1, 1] for _ in range(K)]
    f1 = f2 = 0.0
    branches = 0
    for k in range(K - 1, -1, -1):
        e = edges[seq[k] - 1]
        service = (W + loads[k] - e.q * 0.5) * e.d
        move = W + loads[k]
        if k == K - 1:
            # Last edge: close the tour with an unloaded return to the depot.
            nxt1 = W * D[e.v, DEPOT]
            nxt2 = W * D[e.u, DEPOT]
        else:
            nxt1, nxt2 = f1, f2
        if k == 0:
            prev_exit = (DEPOT, DEPOT)
        else:
            p = edges[seq[k - 1] - 1]
            prev_exit = (p.v, p.u)  # previous direction 1 exits at v, 2 at u
        new1 = new2 = 0.0
        for pi in (0, 1):
            a = move * D[prev_exit[pi], e.u] + nxt1  # enter at u: direction 1
            b = move * D[prev_exit[pi], e.v] + nxt2  # enter at v: direction 2
            branches += 2
            if b < a:
                val = service + b
                choices[k][pi] = 2
            else:
                val = service + a
            if pi == 0:
                new1 = val
            else:
                new2 = val
        f1, f2 = new1, new2
    return f1, choices, branches


def dp_cost(instance: Instance, paths: ShortestPaths, tour: Sequence[int]) -> float:
    """Minimum cost of a tour over all direction assignments, in O(m)."""
    check_tour(instance, tour)
    return _dp(instance, paths, tour)[0]


def dp_cost_stats(
    instance: Instance, paths: ShortestPaths, tour: Sequence[int]
) -> tuple[float, int]:
    """dp_cost plus the number of recursion branch evaluations performed."""
    check_tour(instance, tour)
    cost, _, branches = _dp(instance, paths, tour)
    return cost, branches


def dp_directions(
    instance: Instance, paths: ShortestPaths, tour: Sequence[int]
) -> DirectedTour:
    """Recover the optimal traversal direction of every edge in the tour."""
    check_tour(instance, tour)
    cost, choices, _ = _dp(instance, paths, tour)
    dirs = []
    p = 0
    for k in range(len(tour)):
        d = choices[k][p]
        dirs.append(d)
        p = d - 1
    seq = tuple((eid, d) for eid, d in zip(tour, dirs))
    return DirectedTour(seq=seq, cost=cost)


DirectedLike = Union[DirectedTour, Iterable[tuple[int, int]]]


def _directed_pairs(tour: DirectedLike) -> tuple[tuple[int, int], ...]:
    if isinstance(tour, DirectedTour):
        return tour.seq
    return tuple((int(e), int(d)) for e, d in tour)


def evaluate_directed(
    instance: Instance, paths: ShortestPaths, tour: DirectedLike
) -> float:
    """Cost of a tour whose per-edge directions are fixed by the caller."""
    pairs = _directed_pairs(tour)
    order = tuple(e for e, _ in pairs)
    check_tour(instance, order)
    for _, d in pairs:
        if d not in (1, 2):
            raise InvalidTourError(f"direction {d} not in {{1, 2}}")
    loads = _seq_loads(instance, order)
    D = paths.D
    W = instance.W
    pos = DEPOT
    total = 0.0
    for k, (eid, d) in enumerate(pairs):
        e = instance.edges[eid - 1]
        entry, exit_ = (e.u, e.v) if d == 1 else (e.v, e.u)
        total += (W + loads[k]) * D[pos, entry]
        total += (W + loads[k] - e.q * 0.5) * e.d
        pos = exit_
    total += W * D[pos, DEPOT]
    return float(total)


def expand_walk(
    instance: Instance, paths: ShortestPaths, tour: DirectedLike
) -> list[WalkStep]:
    """Expand a directed tour into the full closed walk from the depot.

    Deadhead legs between services follow shortest paths. The final leg home
    carries no load: when W = 0 every return route costs zero and the walk
    backtracks the way it came, while for W > 0 the shortest path home is
    taken.
    """
    pairs = _directed_pairs(tour)
    order = tuple(e for e, _ in pairs)
    check_tour(instance, order)
    steps: list[WalkStep] = []
    pos = DEPOT
    for eid, d in pairs:
        e = instance.edges[eid - 1]
        entry, exit_ = (e.u, e.v) if d == 1 else (e.v, e.u)
        if pos != entry:
            nodes = paths.path(pos, entry)
            steps.extend(WalkStep(a, b, False) for a, b in zip(nodes, nodes[1:]))
        steps.append(WalkStep(entry, exit_, True, edge_id=eid))
        pos = exit_
    if pos != DEPOT:
        if instance.W > 0:
            nodes = paths.path(pos, DEPOT)
            steps.extend(WalkStep(a, b, False) for a, b in zip(nodes, nodes[1:]))
        else:
            for st in reversed(list(steps)):
                steps.append(WalkStep(st.v, st.u, False))
                if st.u == DEPOT:
                    break
    return steps


def _edge_arrays(instance: Instance):
    m = instance.m
    eu = np.zeros(m + 1, dtype=np.int64)
    ev = np.zeros(m + 1, dtype=np.int64)
    ed = np.zeros(m + 1)
    eq = np.zeros(m + 1)
    for eid, e in enumerate(instance.edges, start=1):
        eu[eid] = e.u
        ev[eid] = e.v
        ed[eid] = e.d
        eq[eid] = e.q
    return eu, ev, ed, eq


def dp_cost_batch(
    instance: Instance, paths: ShortestPaths, rows: Sequence[Sequence[int]]
) -> np.ndarray:
    """Vectorized dp_cost across many candidate tours (one per row).

    Rows may be partial sequences as long as each row holds distinct edge
    ids; no per-row validation is performed.
    """
    if len(rows) == 0:
        return np.empty(0)
    eu, ev, ed, eq = _edge_arrays(instance)
    return _dp_batch(eu, ev, ed, eq, instance.W, paths.D, np.asarray(rows, dtype=np.int64))


def _dp_batch(eu, ev, ed, eq, W, D, rows: np.ndarray) -> np.ndarray:
    seq_u = eu[rows]
    seq_v = ev[rows]
    d = ed[rows]
    q = eq[rows]
    totals = q.sum(axis=1, keepdims=True)
    loads = totals - (np.cumsum(q, axis=1) - q)
    service = (W + loads - q * 0.5) * d
    move = W + loads
    K = rows.shape[1]
    f1 = f2 = None
    for k in range(K - 1, -1, -1):
        entry1 = seq_u[:, k]
        entry2 = seq_v[:, k]
        if k == K - 1:
            nxt1 = W * D[seq_v[:, k], DEPOT]
            nxt2 = W * D[seq_u[:, k], DEPOT]
        else:
            nxt1, nxt2 = f1, f2
        if k == 0:
            pe1 = pe2 = np.full(rows.shape[0], DEPOT, dtype=np.int64)
        else:
            pe1 = seq_v[:, k - 1]
            pe2 = seq_u[:, k - 1]
        mk = move[:, k]
        sk = service[:, k]
        f1 = sk + np.minimum(mk * D[pe1, entry1] + nxt1, mk * D[pe1, entry2] + nxt2)
        f2 = sk + np.minimum(mk * D[pe2, entry1] + nxt1, mk * D[pe2, entry2] + nxt2)
    return f1


class CostEvaluator:
    """Budget-accounted tour-cost evaluation over one (instance, paths) pair.

    Batches go through a vectorized version of the same recursion with the
    same arithmetic order, so scalar and batched evaluation agree exactly on
    integer-valued data.
    """

    def __init__(
        self,
        instance: Instance,
        paths: ShortestPaths,
        budget: Optional[Budget] = None,
    ) -> None:
        self.instance = instance
        self.paths = paths
        self.budget = budget
        self._arrays = _edge_arrays(instance)

    def cost_uncounted(self, seq: Sequence[int]) -> float:
        """Evaluate without touching the budget (bookkeeping only)."""
        return _dp(self.instance, self.paths, seq)[0]

    def one(self, seq: Sequence[int]) -> Optional[float]:
        """Evaluate one sequence, or return None if the budget is spent."""
        if self.budget is not None and self.budget.take(1) == 0:
            return None
        return _dp(self.instance, self.paths, seq)[0]

    def many(self, rows: Sequence[Sequence[int]]) -> np.ndarray:
        """Evaluate the budget-granted prefix of rows, preserving order."""
        count = len(rows)
        if self.budget is not None:
            count = self.budget.take(count)
        if count == 0:
            return np.empty(0)
        eu, ev, ed, eq = self._arrays
        arr = np.asarray(rows[:count], dtype=np.int64)
        return _dp_batch(eu, ev, ed, eq, self.instance.W, self.paths.D, arr)
