import itertools
import random

import pytest

from conftest import random_instance, random_tour
from cpplc import (
    SizeLimitError,
    all_pairs_shortest_paths,
    direction_bruteforce,
    dp_cost,
    exact_optimum,
    make_instance,
)


def test_exact_fig1(fig1, fig1_paths):
    result = exact_optimum(fig1, fig1_paths)
    assert result.best_cost == pytest.approx(275.0, rel=1e-12)
    assert result.best_tour.order == (1, 2, 3, 4)


def test_exact_single_edge(single_edge):
    paths = all_pairs_shortest_paths(single_edge)
    result = exact_optimum(single_edge, paths)
    assert result.best_tour.order == (1,)
    assert result.best_cost == dp_cost(single_edge, paths, (1,))


def test_exact_matches_full_enumeration():
    rng = random.Random(51)
    for _ in range(10):
        inst = random_instance(rng, 3, 3, w=rng.choice([0, 5]))
        paths = all_pairs_shortest_paths(inst)
        best = min(
            dp_cost(inst, paths, perm)
            for perm in itertools.permutations(range(1, inst.m + 1))
        )
        assert exact_optimum(inst, paths).best_cost == pytest.approx(best, rel=1e-12)


def test_exact_returns_lexicographically_smallest():
    # Two identical parallel edges: (1, 2) and (2, 1) tie, (1, 2) must win.
    inst = make_instance(2, [(1, 2, 3, 5), (1, 2, 3, 5)])
    paths = all_pairs_shortest_paths(inst)
    assert exact_optimum(inst, paths).best_tour.order == (1, 2)


def test_exact_refuses_large_instances():
    rng = random.Random(52)
    inst = random_instance(rng, 6, 10)
    paths = all_pairs_shortest_paths(inst)
    with pytest.raises(SizeLimitError):
        exact_optimum(inst, paths, limit=9)


def test_direction_bruteforce_fig1(fig1, fig1_paths):
    assert direction_bruteforce(fig1, fig1_paths, (1, 2, 3, 4)) == pytest.approx(
        275.0, rel=1e-12
    )


def test_direction_bruteforce_single(single_edge):
    paths = all_pairs_shortest_paths(single_edge)
    assert direction_bruteforce(single_edge, paths, (1,)) == 5.0


def test_direction_bruteforce_refuses_large():
    rng = random.Random(53)
    inst = random_instance(rng, 8, 16)
    paths = all_pairs_shortest_paths(inst)
    with pytest.raises(SizeLimitError):
        direction_bruteforce(inst, paths, random_tour(rng, 16), limit=14)


def test_bruteforce_equals_dp_both_ways():
    rng = random.Random(54)
    for _ in range(40):
        inst = random_instance(rng, rng.randint(2, 6), rng.randint(2, 8), w=rng.choice([0, 1]))
        paths = all_pairs_shortest_paths(inst)
        tour = random_tour(rng, inst.m)
        assert direction_bruteforce(inst, paths, tour) == pytest.approx(
            dp_cost(inst, paths, tour), rel=1e-12
        )


def test_exact_not_above_solvers():
    from cpplc import Budget, ea, ils

    rng = random.Random(56)
    for _ in range(3):
        inst = random_instance(rng, 4, 6)
        paths = all_pairs_shortest_paths(inst)
        exact = exact_optimum(inst, paths).best_cost
        for solver in (ils, ea):
            assert exact <= solver(
                inst, paths, Budget(max_iters=10), random.Random(0)
            ).best_cost + 1e-9
