import heapq
import random

import numpy as np
import pytest

from conftest import random_instance
from cpplc import (
    all_pairs_shortest_paths,
    make_instance,
    total_demand,
    validate,
)


def test_fig1_is_valid(fig1):
    assert validate(fig1) == []


def test_self_loop_reported():
    inst = make_instance(2, [(1, 1, 1, 1), (1, 2, 1, 1)])
    assert any("self-loop" in e for e in validate(inst))


def test_disconnected_reported():
    inst = make_instance(4, [(1, 2, 1, 1), (3, 4, 1, 1)])
    assert any("disconnected" in e for e in validate(inst))


def test_out_of_range_and_bad_demand():
    inst = make_instance(2, [(1, 5, 1, 1), (1, 2, 1, 0)])
    errors = validate(inst)
    assert any("out of range" in e for e in errors)
    assert any("nonpositive demand" in e for e in errors)


def test_no_edges_reported():
    assert any("no edges" in e for e in validate(make_instance(1, [])))


def _all_simple_path_lengths(inst, a, b):
    # Exhaustive enumeration over simple paths; oracle for tiny graphs.
    best = float("inf")
    adj = {}
    for e in inst.edges:
        adj.setdefault(e.u, []).append((e.v, e.d))
        adj.setdefault(e.v, []).append((e.u, e.d))

    def walk(node, seen, dist):
        nonlocal best
        if node == b:
            best = min(best, dist)
            return
        for nb, d in adj[node]:
            if nb not in seen:
                walk(nb, seen | {nb}, dist + d)

    walk(a, {a}, 0.0)
    return best


def test_fig1_shortest_paths(fig1, fig1_paths):
    oracle = _all_simple_path_lengths(fig1, 3, 4)
    assert oracle == 4.0
    assert fig1_paths.D[3, 4] == oracle
    for i in range(1, 5):
        assert fig1_paths.D[i, i] == 0.0


def test_single_edge_distance():
    inst = make_instance(2, [(1, 2, 7, 1)])
    paths = all_pairs_shortest_paths(inst)
    assert paths.D[1, 2] == 7.0


def _dijkstra(inst, source):
    dist = {v: float("inf") for v in range(1, inst.n + 1)}
    dist[source] = 0.0
    adj = {v: [] for v in range(1, inst.n + 1)}
    for e in inst.edges:
        adj[e.u].append((e.v, e.d))
        adj[e.v].append((e.u, e.d))
    heap = [(0.0, source)]
    while heap:
        d, node = heapq.heappop(heap)
        if d > dist[node]:
            continue
        for nb, w in adj[node]:
            nd = d + w
            if nd < dist[nb]:
                dist[nb] = nd
                heapq.heappush(heap, (nd, nb))
    return dist


def test_floyd_warshall_matches_dijkstra():
    rng = random.Random(42)
    for _ in range(100):
        n = rng.randint(3, 30)
        m = rng.randint(n - 1, min(3 * n, n * (n - 1) // 2 + n))
        inst = random_instance(rng, n, m)
        paths = all_pairs_shortest_paths(inst)
        for src in range(1, n + 1):
            dist = _dijkstra(inst, src)
            for dst in range(1, n + 1):
                assert paths.D[src, dst] == dist[dst]


def test_next_hop_path_length_matches_distance():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(3, 12)
        inst = random_instance(rng, n, rng.randint(n - 1, 20))
        paths = all_pairs_shortest_paths(inst)
        wmin = np.full((inst.n + 1, inst.n + 1), np.inf)
        for e in inst.edges:
            wmin[e.u, e.v] = min(wmin[e.u, e.v], e.d)
            wmin[e.v, e.u] = min(wmin[e.v, e.u], e.d)
        for a in range(1, inst.n + 1):
            for b in range(1, inst.n + 1):
                nodes = paths.path(a, b)
                assert nodes[0] == a and nodes[-1] == b
                length = sum(wmin[x, y] for x, y in zip(nodes, nodes[1:]))
                assert length == paths.D[a, b]


def test_distance_scaling():
    rng = random.Random(3)
    inst = random_instance(rng, 6, 10)
    scaled = make_instance(
        inst.n, [(e.u, e.v, 3.5 * e.d, e.q) for e in inst.edges], W=inst.W
    )
    base = all_pairs_shortest_paths(inst).D
    big = all_pairs_shortest_paths(scaled).D
    assert np.allclose(big[1:, 1:], 3.5 * base[1:, 1:], rtol=1e-12)


def test_parallel_edges_use_min_length():
    inst = make_instance(2, [(1, 2, 9, 1), (1, 2, 4, 1)])
    paths = all_pairs_shortest_paths(inst)
    assert paths.D[1, 2] == 4.0


@pytest.mark.parametrize(
    "edges,expected",
    [([(1, 2, 1, 10)], 10.0), ([(1, 2, 1, 1), (1, 2, 1, 2), (1, 2, 1, 3)], 6.0)],
)
def test_total_demand_small(edges, expected):
    assert total_demand(make_instance(2, edges)) == expected


def test_total_demand_fig1(fig1):
    assert total_demand(fig1) == 135.0
