import itertools
import random

import numpy as np
import pytest

from cpplc_policy import (
    dp_cost_local,
    dp_cost_local_batch,
    dp_directions_local,
    greedy_insertion,
    make_instance,
    random_instance,
    shortest_paths,
)


def test_worked_instance_costs(fig1):
    assert dp_cost_local(fig1, (1, 2, 3, 4)) == pytest.approx(275.0, rel=1e-12)
    assert dp_cost_local(fig1, (1, 2, 4, 3)) == pytest.approx(325.0, rel=1e-12)
    cost, dirs = dp_directions_local(fig1, (1, 2, 3, 4))
    assert dirs == [1, 1, 1, 2]
    assert cost == pytest.approx(275.0, rel=1e-12)


def test_single_edge_cost():
    inst = make_instance(2, [(1, 2, 1, 10)], W=0)
    assert dp_cost_local(inst, (1,)) == 5.0


def test_rejects_non_permutations(fig1):
    with pytest.raises(ValueError):
        dp_cost_local(fig1, (1, 2, 2, 4))
    with pytest.raises(ValueError):
        dp_cost_local(fig1, (1, 2))


def test_batch_matches_scalar(rng):
    inst = random_instance(rng, 9)
    D = shortest_paths(inst)
    tours = [tuple(rng.sample(range(1, 10), 9)) for _ in range(30)]
    batch = dp_cost_local_batch(inst, tours, D)
    for tour, got in zip(tours, batch):
        assert got == dp_cost_local(inst, tour, D)


def test_cost_is_minimum_over_directions(rng):
    # Enumerate all 2^m direction assignments and price them by hand.
    for _ in range(10):
        inst = random_instance(rng, rng.randint(2, 6))
        D = shortest_paths(inst)
        order = tuple(rng.sample(range(1, inst.m + 1), inst.m))
        total_q = inst.total_demand
        best = float("inf")
        for dirs in itertools.product((1, 2), repeat=inst.m):
            pos = 1
            load = total_q
            cost = 0.0
            for eid, d in zip(order, dirs):
                e = inst.edges[eid - 1]
                entry, exit_ = (e.u, e.v) if d == 1 else (e.v, e.u)
                cost += (inst.W + load) * D[pos, entry]
                cost += (inst.W + load - e.q / 2) * e.d
                load -= e.q
                pos = exit_
            cost += inst.W * D[pos, 1]
            best = min(best, cost)
        assert dp_cost_local(inst, order, D) == pytest.approx(best, rel=1e-12)


def test_greedy_insertion_is_valid_permutation(rng):
    for _ in range(5):
        inst = random_instance(rng, rng.randint(3, 9))
        tour = greedy_insertion(inst)
        assert sorted(tour) == list(range(1, inst.m + 1))
        assert greedy_insertion(inst) == tour


def test_shortest_paths_triangle_inequality(rng):
    inst = random_instance(rng, 10)
    D = shortest_paths(inst)
    n = inst.n
    for i in range(1, n + 1):
        assert D[i, i] == 0.0
        for j in range(1, n + 1):
            assert D[i, j] == D[j, i]
            for k in range(1, n + 1):
                assert D[i, j] <= D[i, k] + D[k, j] + 1e-12
