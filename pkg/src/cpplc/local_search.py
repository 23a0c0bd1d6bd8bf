"""Neighborhood operators shared by the iterative solvers.

Every operator does one best-improvement scan of its whole neighborhood in a
fixed (s, t) order and returns the input tour when no candidate is strictly
cheaper; ties keep the first candidate found. Candidate evaluations are
charged to the budget; when it runs out mid-scan the best tour seen so far
is returned.

Scans are vectorized: each neighborhood is a fixed permutation of positions
that depends only on the tour length, so its index matrix is cached and a
whole scan is one gather plus one batched evaluation.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Optional

import numpy as np

from .evaluate import Budget, CostEvaluator, Tour, check_tour
from .graph import Instance, ShortestPaths

RELOCATE, REVERSE, SWAP = "relocate", "reverse", "swap"


def relocation_candidates(seq: Tour) -> list[Tour]:
    """Remove the s-th edge and reinsert at position t, for all s != t."""
    m = len(seq)
    out = []
    for s in range(m):
        for t in range(m):
            if s == t:
                continue
            lst = list(seq)
            x = lst.pop(s)
            lst.insert(t, x)
            out.append(tuple(lst))
    return out


def reversal_candidates(seq: Tour) -> list[Tour]:
    """Reverse the subsequence s..t, for all s < t."""
    m = len(seq)
    out = []
    for s in range(m - 1):
        for t in range(s + 1, m):
            out.append(seq[:s] + seq[s : t + 1][::-1] + seq[t + 1 :])
    return out


def swap_candidates(seq: Tour) -> list[Tour]:
    """Swap the s-th and t-th edges, for all s < t."""
    m = len(seq)
    out = []
    for s in range(m - 1):
        for t in range(s + 1, m):
            lst = list(seq)
            lst[s], lst[t] = lst[t], lst[s]
            out.append(tuple(lst))
    return out


@lru_cache(maxsize=16)
def _relocation_index(m: int) -> np.ndarray:
    s = np.repeat(np.arange(m), m)
    t = np.tile(np.arange(m), m)
    keep = s != t
    s, t = s[keep, None], t[keep, None]
    j = np.arange(m)[None, :]
    fwd = np.where(j == t, s, np.where((j >= s) & (j < t), j + 1, j))
    bwd = np.where(j == t, s, np.where((j > t) & (j <= s), j - 1, j))
    return np.where(s < t, fwd, bwd)


@lru_cache(maxsize=16)
def _pairs(m: int) -> tuple[np.ndarray, np.ndarray]:
    s = np.repeat(np.arange(m - 1), np.arange(m - 1, 0, -1))
    t = np.concatenate([np.arange(a + 1, m) for a in range(m - 1)]) if m > 1 else np.empty(0, dtype=int)
    return s, t


@lru_cache(maxsize=16)
def _reversal_index(m: int) -> np.ndarray:
    s, t = _pairs(m)
    s, t = s[:, None], t[:, None]
    j = np.arange(m)[None, :]
    return np.where((j >= s) & (j <= t), s + t - j, j)


@lru_cache(maxsize=16)
def _swap_index(m: int) -> np.ndarray:
    s, t = _pairs(m)
    rows = np.tile(np.arange(m), (len(s), 1))
    r = np.arange(len(s))
    rows[r, s] = t
    rows[r, t] = s
    return rows


_INDEX_BUILDERS = {
    RELOCATE: _relocation_index,
    REVERSE: _reversal_index,
    SWAP: _swap_index,
}


def neighborhood_rows(tour: Tour, kind: str) -> np.ndarray:
    """All neighbors of the tour under one move kind, in scan order."""
    m = len(tour)
    if m < 2:
        return np.empty((0, m), dtype=np.int64)
    index = _INDEX_BUILDERS[kind](m)
    return np.asarray(tour, dtype=np.int64)[index]


def best_neighbor(
    ev: CostEvaluator, tour: Tour, tour_cost: float, kind: str
) -> tuple[Tour, float]:
    """Best-improvement step used by the solvers; returns (tour, cost)."""
    rows = neighborhood_rows(tour, kind)
    costs = ev.many(rows)
    if costs.size:
        idx = int(np.argmin(costs))
        if costs[idx] < tour_cost:
            return tuple(int(e) for e in rows[idx]), float(costs[idx])
    return tour, tour_cost


def _operator(
    instance: Instance,
    paths: ShortestPaths,
    tour: Tour,
    budget: Optional[Budget],
    kind: str,
) -> Tour:
    check_tour(instance, tour)
    ev = CostEvaluator(instance, paths, budget)
    return best_neighbor(ev, tour, ev.cost_uncounted(tour), kind)[0]


def one_opt(
    instance: Instance,
    paths: ShortestPaths,
    tour: Tour,
    budget: Optional[Budget] = None,
) -> Tour:
    """Best relocation of a single edge to another position."""
    return _operator(instance, paths, tour, budget, RELOCATE)


def two_opt(
    instance: Instance,
    paths: ShortestPaths,
    tour: Tour,
    budget: Optional[Budget] = None,
) -> Tour:
    """Best reversal of a contiguous subsequence."""
    return _operator(instance, paths, tour, budget, REVERSE)


def two_exchange(
    instance: Instance,
    paths: ShortestPaths,
    tour: Tour,
    budget: Optional[Budget] = None,
) -> Tour:
    """Best swap of two edge positions."""
    return _operator(instance, paths, tour, budget, SWAP)


def perturbation_strength(m: int) -> int:
    """Number of random swaps used to shake a tour of m edges."""
    return max(1, round(0.2 * m))


def perturb(tour: Tour, strength: int, rng: random.Random) -> Tour:
    """Apply `strength` random position swaps; s == t draws are redrawn."""
    if strength < 1:
        raise ValueError("perturbation strength must be >= 1")
    m = len(tour)
    if m < 2:
        return tuple(tour)
    lst = list(tour)
    for _ in range(strength):
        s = rng.randrange(m)
        t = rng.randrange(m)
        while t == s:
            t = rng.randrange(m)
        lst[s], lst[t] = lst[t], lst[s]
    return tuple(lst)
