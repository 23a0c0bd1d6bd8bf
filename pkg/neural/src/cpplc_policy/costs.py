"""Tour rewards: the direction dynamic program over an edge order.

Servicing edge e with load Q costs (W + Q - q_e/2) * d_e; moving between
services costs (W + Q) times the shortest-path distance; the program picks
the traversal direction of every edge to minimize the total, in O(m) per
tour after an O(n^3) shortest-path precomputation.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .instances import Instance

DEPOT = 1


def shortest_paths(instance: Instance) -> np.ndarray:
    """Floyd-Warshall distance matrix, padded so nodes index directly."""
    n = instance.n
    D = np.full((n + 1, n + 1), np.inf)
    for i in range(1, n + 1):
        D[i, i] = 0.0
    for e in instance.edges:
        if e.d < D[e.u, e.v]:
            D[e.u, e.v] = D[e.v, e.u] = e.d
    for k in range(1, n + 1):
        D = np.minimum(D, D[:, k : k + 1] + D[k : k + 1, :])
    return D


def _loads(instance: Instance, order: Sequence[int]) -> list[float]:
    total = sum(instance.edges[eid - 1].q for eid in order)
    out = []
    served = 0.0
    for eid in order:
        out.append(total - served)
        served += instance.edges[eid - 1].q
    return out


def dp_directions_local(
    instance: Instance, order: Sequence[int], D: np.ndarray | None = None
) -> tuple[float, list[int]]:
    """Minimum cost of the order plus the minimizing direction per edge."""
    if sorted(order) != list(range(1, instance.m + 1)):
        raise ValueError("tour must be a permutation of all edge ids")
    if D is None:
        D = shortest_paths(instance)
    edges = instance.edges
    W = instance.W
    K = len(order)
    loads = _loads(instance, order)
    f1 = f2 = 0.0
    choices = [[1, 1] for _ in range(K)]
    for k in range(K - 1, -1, -1):
        e = edges[order[k] - 1]
        service = (W + loads[k] - e.q * 0.5) * e.d
        move = W + loads[k]
        if k == K - 1:
            nxt1 = W * D[e.v, DEPOT]
            nxt2 = W * D[e.u, DEPOT]
        else:
            nxt1, nxt2 = f1, f2
        if k == 0:
            prev_exit = (DEPOT, DEPOT)
        else:
            p = edges[order[k - 1] - 1]
            prev_exit = (p.v, p.u)
        vals = []
        for pi in (0, 1):
            a = move * D[prev_exit[pi], e.u] + nxt1
            b = move * D[prev_exit[pi], e.v] + nxt2
            if b < a:
                vals.append(service + b)
                choices[k][pi] = 2
            else:
                vals.append(service + a)
        f1, f2 = vals
    dirs = []
    prev = 0
    for k in range(K):
        d = choices[k][prev]
        dirs.append(d)
        prev = d - 1
    return float(f1), dirs


def dp_cost_local(
    instance: Instance, order: Sequence[int], D: np.ndarray | None = None
) -> float:
    """Tour cost with directions optimized out; the training reward is its
    negative."""
    return dp_directions_local(instance, order, D)[0]


def dp_cost_local_batch(
    instance: Instance, orders: Sequence[Sequence[int]], D: np.ndarray | None = None
) -> np.ndarray:
    """Vectorized dp_cost_local across many tours of one instance."""
    if len(orders) == 0:
        return np.empty(0)
    if D is None:
        D = shortest_paths(instance)
    m = instance.m
    eu = np.zeros(m + 1, dtype=np.int64)
    ev = np.zeros(m + 1, dtype=np.int64)
    ed = np.zeros(m + 1)
    eq = np.zeros(m + 1)
    for eid, e in enumerate(instance.edges, start=1):
        eu[eid], ev[eid], ed[eid], eq[eid] = e.u, e.v, e.d, e.q
    rows = np.asarray(orders, dtype=np.int64)
    W = instance.W
    u = eu[rows]
    v = ev[rows]
    d = ed[rows]
    q = eq[rows]
    totals = q.sum(axis=1, keepdims=True)
    loads = totals - (np.cumsum(q, axis=1) - q)
    service = (W + loads - q * 0.5) * d
    move = W + loads
    K = rows.shape[1]
    f1 = f2 = None
    for k in range(K - 1, -1, -1):
        if k == K - 1:
            nxt1 = W * D[v[:, k], DEPOT]
            nxt2 = W * D[u[:, k], DEPOT]
        else:
            nxt1, nxt2 = f1, f2
        if k == 0:
            pe1 = pe2 = np.full(rows.shape[0], DEPOT, dtype=np.int64)
        else:
            pe1, pe2 = v[:, k - 1], u[:, k - 1]
        mk = move[:, k]
        sk = service[:, k]
        f1 = sk + np.minimum(mk * D[pe1, u[:, k]] + nxt1, mk * D[pe1, v[:, k]] + nxt2)
        f2 = sk + np.minimum(mk * D[pe2, u[:, k]] + nxt1, mk * D[pe2, v[:, k]] + nxt2)
    return f1


def greedy_insertion(instance: Instance, D: np.ndarray | None = None) -> tuple[int, ...]:
    """Cheap deterministic reference tour: insert edges by decreasing d*q at
    the position the DP likes best. Used for divergence guards and reporting."""
    if D is None:
        D = shortest_paths(instance)
    order = sorted(
        range(1, instance.m + 1),
        key=lambda eid: (-instance.edges[eid - 1].d * instance.edges[eid - 1].q, eid),
    )
    seq: list[int] = []
    for eid in order:
        candidates = [seq[:p] + [eid] + seq[p:] for p in range(len(seq) + 1)]
        costs = [_partial_cost(instance, c, D) for c in candidates]
        seq = candidates[int(np.argmin(costs))]
    return tuple(seq)


def _partial_cost(instance: Instance, order: Sequence[int], D: np.ndarray) -> float:
    # Same recursion as dp_directions_local but valid for subsets: the load
    # starts at the demand the sequence itself will serve.
    edges = instance.edges
    W = instance.W
    K = len(order)
    loads = _loads(instance, order)
    f1 = f2 = 0.0
    for k in range(K - 1, -1, -1):
        e = edges[order[k] - 1]
        service = (W + loads[k] - e.q * 0.5) * e.d
        move = W + loads[k]
        if k == K - 1:
            nxt1 = W * D[e.v, DEPOT]
            nxt2 = W * D[e.u, DEPOT]
        else:
            nxt1, nxt2 = f1, f2
        if k == 0:
            prev_exit = (DEPOT, DEPOT)
        else:
            p = edges[order[k - 1] - 1]
            prev_exit = (p.v, p.u)
        new = []
        for pi in (0, 1):
            a = move * D[prev_exit[pi], e.u] + nxt1
            b = move * D[prev_exit[pi], e.v] + nxt2
            new.append(service + min(a, b))
        f1, f2 = new
    return float(f1)
