import random

import pytest

from cpplc import Instance, all_pairs_shortest_paths, make_instance

FIG1_EDGES = [
    (1, 2, 2, 100),
    (2, 3, 1, 20),
    (1, 4, 1, 10),
    (3, 4, 10, 5),
]

FIG1_FILE = """CPPLC 1
4 4 0
1 2 2 100
2 3 1 20
1 4 1 10
3 4 10 5
"""


@pytest.fixture(scope="session")
def fig1() -> Instance:
    return make_instance(4, FIG1_EDGES, W=0)


@pytest.fixture(scope="session")
def fig1_paths(fig1):
    return all_pairs_shortest_paths(fig1)


@pytest.fixture(scope="session")
def single_edge():
    return make_instance(2, [(1, 2, 1, 10)], W=0)


def random_instance(
    rng: random.Random,
    n: int,
    m: int,
    w: float = 0.0,
    max_len: int = 10,
    max_demand: int = 20,
    allow_parallel: bool = True,
) -> Instance:
    """Small random connected multigraph with integer lengths and demands."""
    n = min(n, m + 1)  # a connected graph needs m >= n - 1
    edges = []
    order = list(range(1, n + 1))
    rng.shuffle(order)
    for i in range(1, n):
        a, b = order[i], order[rng.randrange(i)]
        edges.append((a, b, rng.randint(1, max_len), rng.randint(1, max_demand)))
    while len(edges) < m:
        a = rng.randrange(1, n + 1)
        b = rng.randrange(1, n + 1)
        if a == b:
            continue
        if not allow_parallel and any(
            {a, b} == {e[0], e[1]} for e in edges
        ):
            continue
        edges.append((a, b, rng.randint(1, max_len), rng.randint(1, max_demand)))
    return make_instance(n, edges, W=w)


def random_tour(rng: random.Random, m: int) -> tuple[int, ...]:
    return tuple(rng.sample(range(1, m + 1), m))


class ScriptedRng:
    """Stand-in rng whose randrange draws come from a fixed script."""

    def __init__(self, draws):
        self.draws = list(draws)

    def randrange(self, _n):
        return self.draws.pop(0)
