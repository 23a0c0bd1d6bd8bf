"""Autoregressive decoding of full tours from the policy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import torch

from .instances import Instance
from .model import PolicyNet
from .transform import TransformedGraph, transform


@dataclass
class EpisodeState:
    """Decoder state at step t: which edges are taken, the normalized load
    still on board, and the first/last picks (None before the first step)."""

    visited: np.ndarray
    remaining: float
    last_idx: Optional[int]
    first_idx: Optional[int]


def episode_states(instance: Instance, order: Sequence[int]) -> list[EpisodeState]:
    """State trajectory induced by an action prefix: element t is the state
    just before the (t+1)-th pick, so its mask has exactly t edges set and
    the remaining load is 1 - served/Q."""
    total = instance.total_demand
    states = [EpisodeState(np.zeros(instance.m, dtype=bool), 1.0, None, None)]
    visited = np.zeros(instance.m, dtype=bool)
    served = 0.0
    first = None
    for eid in order:
        visited = visited.copy()
        visited[eid - 1] = True
        served += instance.edges[eid - 1].q
        if first is None:
            first = eid - 1
        states.append(
            EpisodeState(visited, 1.0 - served / total, eid - 1, first)
        )
    return states


def _stack(graphs: Sequence[TransformedGraph], dtype: torch.dtype):
    features = torch.tensor(np.stack([g.features for g in graphs]), dtype=dtype)
    adj = torch.tensor(np.stack([g.adjacency for g in graphs]))
    return features, adj


def rollout_batch(
    model: PolicyNet,
    instances: Sequence[Instance],
    mode: str = "sample",
    generator: Optional[torch.Generator] = None,
):
    """Decode one tour per instance (all of equal edge count).

    Returns (orders, logps): a list of 1-based edge-id tuples and a tensor
    of summed log-probabilities (differentiable). Greedy mode takes the
    argmax, breaking ties toward the lowest edge id; sample mode draws from
    the masked distribution.
    """
    if mode not in ("sample", "greedy"):
        raise ValueError(f"unknown rollout mode {mode!r}")
    m = instances[0].m
    if any(inst.m != m for inst in instances):
        raise ValueError("batched rollout needs equal edge counts")
    dtype = next(model.parameters()).dtype
    b = len(instances)
    features, adj = _stack([transform(inst) for inst in instances], dtype)
    embeddings, graph_emb = model.encode(features, adj)
    edge_emb = embeddings[:, 1:, :]
    totals = torch.tensor([inst.total_demand for inst in instances], dtype=dtype)
    served = torch.zeros(b, dtype=dtype)
    visited = torch.zeros(b, m, dtype=torch.bool)
    last_idx = first_idx = None
    logp_total = torch.zeros(b, dtype=dtype)
    picks = []
    demands = torch.tensor(
        [[e.q for e in inst.edges] for inst in instances], dtype=dtype
    )
    for _ in range(m):
        remaining = 1.0 - served / totals
        logp = model.decode_step(edge_emb, graph_emb, visited, remaining, last_idx, first_idx)
        if mode == "greedy":
            # np.argmax takes the first maximum: lowest edge id on ties.
            chosen = torch.tensor(
                np.argmax(logp.detach().cpu().numpy(), axis=1), dtype=torch.long
            )
        else:
            probs = torch.exp(logp.detach())
            chosen = torch.multinomial(probs, 1, generator=generator).squeeze(1)
        logp_total = logp_total + logp[torch.arange(b), chosen]
        picks.append(chosen)
        served = served + demands[torch.arange(b), chosen]
        visited = visited.clone()
        visited[torch.arange(b), chosen] = True
        last_idx = chosen
        if first_idx is None:
            first_idx = chosen
    orders = [
        tuple(int(step[i]) + 1 for step in picks) for i in range(b)
    ]
    return orders, logp_total


def rollout(
    model: PolicyNet,
    instance: Instance,
    mode: str = "sample",
    generator: Optional[torch.Generator] = None,
) -> tuple[tuple[int, ...], float]:
    """Single-instance rollout; returns (edge order, total log-probability)."""
    orders, logps = rollout_batch(model, [instance], mode, generator)
    return orders[0], float(logps[0].item())
