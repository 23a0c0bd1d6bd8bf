"""Instance model and the shared CPPLC text format.

This package talks to the solver toolchain only through files, so it carries
its own reader/writer for the same format: whitespace-separated, LF endings,
edge id = 1-based line order, depot is node 1.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    d: float
    q: float


@dataclass(frozen=True)
class Instance:
    n: int
    edges: tuple[Edge, ...]
    W: float = 0.0

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_demand(self) -> float:
        return sum(e.q for e in self.edges)


def make_instance(n: int, rows: Iterable[Sequence[float]], W: float = 0.0) -> Instance:
    edges = tuple(Edge(int(u), int(v), float(d), float(q)) for u, v, d, q in rows)
    return Instance(n=int(n), edges=edges, W=float(W))


def _fmt(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return f"{x:.6f}".rstrip("0").rstrip(".")


def write_instance(instance: Instance, path) -> None:
    lines = [f"CPPLC 1", f"{instance.n} {instance.m} {_fmt(instance.W)}"]
    lines += [f"{e.u} {e.v} {_fmt(e.d)} {_fmt(e.q)}" for e in instance.edges]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_instance(path) -> Instance:
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw or raw[0].split() != ["CPPLC", "1"]:
        raise ValueError(f"{path}: expected 'CPPLC 1' header")
    n, m, W = raw[1].split()
    edges = []
    for line in raw[2 : 2 + int(m)]:
        u, v, d, q = line.split()
        edges.append(Edge(int(u), int(v), float(d), float(q)))
    if len(edges) != int(m):
        raise ValueError(f"{path}: expected {m} edge lines")
    return Instance(n=int(n), edges=tuple(edges), W=float(W))


def write_solution(path, order: Sequence[int], dirs: Sequence[int], cost: float) -> None:
    lines = ["CPPLC-SOL 1", f"cost {_fmt(round(cost, 6))}", str(len(order))]
    lines += [f"{eid} {d}" for eid, d in zip(order, dirs)]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def random_instance(rng: random.Random, m: int, max_weight: float = 0.0) -> Instance:
    """Random connected multigraph with m edges; training distribution.

    Node count scales with m; lengths and demands are small integers so the
    reward magnitudes stay moderate at toy scale.
    """
    n = max(3, min(m, 2 + m // 2))
    edges = []
    order = list(range(1, n + 1))
    rng.shuffle(order)
    for i in range(1, n):
        a, b = order[i], order[rng.randrange(i)]
        edges.append((a, b, rng.randint(1, 10), rng.randint(1, 10)))
    while len(edges) < m:
        a = rng.randrange(1, n + 1)
        b = rng.randrange(1, n + 1)
        if a == b:
            continue
        edges.append((a, b, rng.randint(1, 10), rng.randint(1, 10)))
    W = max_weight * rng.random() if max_weight else 0.0
    return make_instance(n, edges, W=W)


def instance_stream(seed: int, m_lo: int, m_hi: int):
    """Endless deterministic stream of training instances."""
    rng = random.Random(seed)
    while True:
        yield random_instance(rng, rng.randint(m_lo, m_hi))
