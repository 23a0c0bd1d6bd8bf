"""Seeded generator of benchmark instances.

Nodes get uniform coordinates in the unit square; the edge set is a random
spanning tree plus uniform extra pairs up to the density target, with
integer lengths (1000x Euclidean distance, minimum 1) so written files are
exact. The eulerian flag pairs odd-degree nodes at random and joins each
pair with an additional parallel edge.
"""

from __future__ import annotations

import math
import random

from .graph import Edge, Instance

DEMAND_MODES = ("proportional", "random")
W_MODES = ("zero", "halfQ", "fiveQ")


def generate(
    n: int,
    density: float,
    demand_mode: str = "random",
    w_mode: str = "halfQ",
    eulerian: bool = False,
    seed: int = 0,
) -> Instance:
    """Build one instance; identical arguments give identical output."""
    if n < 3:
        raise ValueError("n must be >= 3")
    if not 0.0 < density <= 1.0:
        raise ValueError("density must be in (0, 1]")
    if demand_mode not in DEMAND_MODES:
        raise ValueError(f"demand_mode must be one of {DEMAND_MODES}")
    if w_mode not in W_MODES:
        raise ValueError(f"w_mode must be one of {W_MODES}")
    rng = random.Random(seed)
    coords = [(rng.random(), rng.random()) for _ in range(n + 1)]  # index 0 unused

    def length(a: int, b: int) -> int:
        dist = math.hypot(coords[a][0] - coords[b][0], coords[a][1] - coords[b][1])
        return max(1, round(1000.0 * dist))

    # Random spanning tree over a shuffled node order guarantees connectivity.
    order = list(range(1, n + 1))
    rng.shuffle(order)
    pairs: list[tuple[int, int]] = []
    pair_set: set[tuple[int, int]] = set()
    for i in range(1, n):
        a = order[i]
        b = order[rng.randrange(i)]
        uv = (min(a, b), max(a, b))
        pairs.append(uv)
        pair_set.add(uv)
    target = max(n - 1, math.ceil(density * n * (n - 1) / 2))
    while len(pairs) < target:
        a = rng.randrange(1, n + 1)
        b = rng.randrange(1, n + 1)
        if a == b:
            continue
        uv = (min(a, b), max(a, b))
        if uv in pair_set:
            continue
        pairs.append(uv)
        pair_set.add(uv)
    if eulerian:
        degree = [0] * (n + 1)
        for u, v in pairs:
            degree[u] += 1
            degree[v] += 1
        odd = [node for node in range(1, n + 1) if degree[node] % 2 == 1]
        rng.shuffle(odd)
        for i in range(0, len(odd), 2):  # odd-degree count is always even
            a, b = odd[i], odd[i + 1]
            pairs.append((min(a, b), max(a, b)))
    edges = []
    for u, v in pairs:
        d = length(u, v)
        if demand_mode == "proportional":
            q = d
        else:
            q = rng.randint(1, 100)
        edges.append(Edge(u=u, v=v, d=float(d), q=float(q)))
    Q = sum(e.q for e in edges)
    W = {"zero": 0.0, "halfQ": Q / 2.0, "fiveQ": 5.0 * Q}[w_mode]
    return Instance(n=n, edges=tuple(edges), W=W)
