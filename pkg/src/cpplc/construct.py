"""Greedy constructive heuristic: the seed tour for every solver."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .evaluate import Budget, CostEvaluator, Tour
from .graph import Instance, ShortestPaths


def insertion_order(instance: Instance) -> list[int]:
    """Edge ids by decreasing d*q; equal keys keep ascending id order."""
    return sorted(range(1, instance.m + 1), key=lambda eid: (-instance.edges[eid - 1].d * instance.edges[eid - 1].q, eid))


def greedy_construct(
    instance: Instance,
    paths: ShortestPaths,
    budget: Optional[Budget] = None,
) -> Tour:
    """Insert edges one by one, each at its cheapest position so far.

    Edges are processed in decreasing d*q order; every candidate position of
    the growing sequence is scored with the direction DP and the cheapest one
    wins (ties go to the smallest position index). Each candidate scored
    consumes one budget evaluation; once the budget runs out the remaining
    edges are appended in processing order so the result stays a permutation.
    """
    ev = CostEvaluator(instance, paths, budget)
    seq: list[int] = []
    out_of_budget = False
    for eid in insertion_order(instance):
        if out_of_budget:
            seq.append(eid)
            continue
        candidates = [seq[:p] + [eid] + seq[p:] for p in range(len(seq) + 1)]
        costs = ev.many(candidates)
        if costs.size == 0:
            out_of_budget = True
            seq.append(eid)
            continue
        seq = candidates[int(np.argmin(costs))]
    return tuple(seq)
