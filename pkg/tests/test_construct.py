import random

from conftest import random_instance
from cpplc import (
    Budget,
    all_pairs_shortest_paths,
    dp_cost,
    exact_optimum,
    greedy_construct,
    insertion_order,
    make_instance,
)


def test_insertion_order_fig1(fig1):
    # d*q keys: e1=200, e4=50, e2=20, e3=10.
    assert insertion_order(fig1) == [1, 4, 2, 3]


def test_insertion_order_tie_is_ascending_id():
    inst = make_instance(2, [(1, 2, 2, 5), (1, 2, 5, 2)])
    assert insertion_order(inst) == [1, 2]


def test_greedy_fig1(fig1, fig1_paths):
    tour = greedy_construct(fig1, fig1_paths)
    assert sorted(tour) == [1, 2, 3, 4]
    assert dp_cost(fig1, fig1_paths, tour) <= 325.0


def test_greedy_single_edge(single_edge):
    paths = all_pairs_shortest_paths(single_edge)
    assert greedy_construct(single_edge, paths) == (1,)


def test_greedy_deterministic():
    rng = random.Random(19)
    for _ in range(5):
        inst = random_instance(rng, 6, 10, w=rng.choice([0, 7]))
        paths = all_pairs_shortest_paths(inst)
        first = greedy_construct(inst, paths)
        second = greedy_construct(inst, paths)
        assert first == second
        assert sorted(first) == list(range(1, inst.m + 1))


def test_greedy_not_below_exact_optimum():
    rng = random.Random(41)
    for _ in range(8):
        inst = random_instance(rng, rng.randint(2, 5), rng.randint(3, 7), w=rng.choice([0, 3]))
        paths = all_pairs_shortest_paths(inst)
        greedy_cost = dp_cost(inst, paths, greedy_construct(inst, paths))
        assert greedy_cost >= exact_optimum(inst, paths).best_cost - 1e-9


def test_greedy_respects_budget():
    rng = random.Random(43)
    inst = random_instance(rng, 6, 10)
    paths = all_pairs_shortest_paths(inst)
    budget = Budget(max_evals=7)
    tour = greedy_construct(inst, paths, budget)
    assert sorted(tour) == list(range(1, inst.m + 1))
    assert budget.evals_used <= 7
