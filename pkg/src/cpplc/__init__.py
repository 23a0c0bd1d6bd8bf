"""Solvers and benchmark tools for the Chinese Postman Problem with
load-dependent costs (CPP-LC)."""

from .construct import greedy_construct, insertion_order
from .evaluate import (
    Budget,
    CostEvaluator,
    DirectedTour,
    InvalidTourError,
    Tour,
    WalkStep,
    dp_cost,
    dp_cost_batch,
    dp_directions,
    evaluate_directed,
    expand_walk,
    load_prefixes,
)
from .fileio import (
    ParseError,
    read_instance,
    read_solution,
    write_instance,
    write_solution,
)
from .generate import generate
from .graph import (
    DEPOT,
    Edge,
    Instance,
    InvalidInstanceError,
    ShortestPaths,
    all_pairs_shortest_paths,
    make_instance,
    total_demand,
    validate,
)
from .local_search import one_opt, perturb, perturbation_strength, two_exchange, two_opt
from .metaheuristics import (
    PheromoneTable,
    Population,
    SolveResult,
    aco,
    aco_sample,
    ea,
    ils,
    init_pheromones,
    mix_crossover,
    vns,
)
from .oracle import SizeLimitError, direction_bruteforce, exact_optimum

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "CostEvaluator",
    "DEPOT",
    "DirectedTour",
    "Edge",
    "Instance",
    "InvalidInstanceError",
    "InvalidTourError",
    "ParseError",
    "PheromoneTable",
    "Population",
    "ShortestPaths",
    "SizeLimitError",
    "SolveResult",
    "Tour",
    "WalkStep",
    "aco",
    "aco_sample",
    "all_pairs_shortest_paths",
    "direction_bruteforce",
    "dp_cost",
    "dp_cost_batch",
    "dp_directions",
    "ea",
    "evaluate_directed",
    "exact_optimum",
    "expand_walk",
    "generate",
    "greedy_construct",
    "ils",
    "init_pheromones",
    "insertion_order",
    "load_prefixes",
    "make_instance",
    "mix_crossover",
    "one_opt",
    "perturb",
    "perturbation_strength",
    "read_instance",
    "read_solution",
    "total_demand",
    "two_exchange",
    "two_opt",
    "validate",
    "vns",
    "write_instance",
    "write_solution",
]
