"""Problem instances: a weighted multigraph with per-edge demands, plus
all-pairs shortest paths used for deadhead distances."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEPOT = 1


class InvalidInstanceError(ValueError):
    """Raised when an operation requires a valid instance but got violations."""


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    d: float
    q: float


@dataclass(frozen=True)
class Instance:
    """Undirected multigraph; nodes are 1..n and node 1 is the depot.

    Edges are identified by their 1-based position in ``edges`` so that
    parallel edges stay distinct. ``W`` is the vehicle curb weight.
    """

    n: int
    edges: tuple[Edge, ...]
    W: float = 0.0

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge(self, eid: int) -> Edge:
        return self.edges[eid - 1]


def make_instance(n: int, edges: Iterable[Sequence[float]], W: float = 0.0) -> Instance:
    """Build an Instance from (u, v, d, q) rows."""
    rows = tuple(Edge(int(u), int(v), float(d), float(q)) for u, v, d, q in edges)
    return Instance(n=int(n), edges=rows, W=float(W))


def total_demand(instance: Instance) -> float:
    """Total amount of commodity the vehicle carries when leaving the depot."""
    return sum(e.q for e in instance.edges)


def validate(instance: Instance) -> list[str]:
    """Check every instance invariant; returns one message per violation."""
    errors: list[str] = []
    if instance.n < 1:
        errors.append("node count must be >= 1")
    if instance.m == 0:
        errors.append("instance has no edges")
    if instance.W < 0:
        errors.append("negative curb weight")
    adj: dict[int, list[int]] = {}
    for eid, e in enumerate(instance.edges, start=1):
        in_range = 1 <= e.u <= instance.n and 1 <= e.v <= instance.n
        if not in_range:
            errors.append(f"edge {eid}: node id out of range")
        elif e.u == e.v:
            errors.append(f"edge {eid}: self-loop")
        else:
            adj.setdefault(e.u, []).append(e.v)
            adj.setdefault(e.v, []).append(e.u)
        if e.q <= 0:
            errors.append(f"edge {eid}: nonpositive demand")
        if e.d < 0:
            errors.append(f"edge {eid}: negative length")
    if instance.n >= 1 and instance.m > 0:
        seen = {DEPOT}
        queue = deque([DEPOT])
        while queue:
            node = queue.popleft()
            for nb in adj.get(node, ()):
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        missing = [v for v in range(1, instance.n + 1) if v not in seen]
        if missing:
            errors.append(f"disconnected: nodes {missing} unreachable from depot")
    return errors


def require_valid(instance: Instance) -> None:
    errors = validate(instance)
    if errors:
        raise InvalidInstanceError("; ".join(errors))


@dataclass(frozen=True)
class ShortestPaths:
    """Dense all-pairs shortest paths; row/column 0 is unused padding."""

    D: np.ndarray
    next_hop: np.ndarray

    def path(self, i: int, j: int) -> list[int]:
        """One shortest i -> j node path (following the next_hop tie-breaks)."""
        node = i
        out = [i]
        while node != j:
            node = int(self.next_hop[node, j])
            out.append(node)
        return out


def all_pairs_shortest_paths(instance: Instance) -> ShortestPaths:
    """Floyd-Warshall over edge lengths.

    Relaxations use strict improvement with k = 1..n outermost, so the first
    shortest path found is kept on ties. Parallel edges collapse to their
    minimum length.
    """
    n = instance.n
    D = np.full((n + 1, n + 1), np.inf)
    nxt = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i in range(1, n + 1):
        D[i, i] = 0.0
        nxt[i, i] = i
    for e in instance.edges:
        if e.d < D[e.u, e.v]:
            D[e.u, e.v] = D[e.v, e.u] = e.d
            nxt[e.u, e.v] = e.v
            nxt[e.v, e.u] = e.u
    for k in range(1, n + 1):
        alt = D[:, k : k + 1] + D[k : k + 1, :]
        better = alt < D
        if better.any():
            D = np.where(better, alt, D)
            hop = np.broadcast_to(nxt[:, k : k + 1], nxt.shape)
            nxt = np.where(better, hop, nxt)
    D.flags.writeable = False
    nxt.flags.writeable = False
    return ShortestPaths(D=D, next_hop=nxt)
