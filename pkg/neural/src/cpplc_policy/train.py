"""REINFORCE training with a greedy-rollout baseline.

Each step samples a batch of instances, rolls out the current policy with
sampling and the baseline policy greedily, and follows the gradient of
sum((cost - baseline_cost) * logprob). After every epoch the baseline
adopts the current weights iff the current policy's mean greedy cost on a
fixed validation set is lower.
"""

from __future__ import annotations

import copy
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import torch

from .costs import dp_cost_local, greedy_insertion, shortest_paths
from .instances import Instance, instance_stream, random_instance
from .model import PolicyConfig, PolicyNet
from .rollout import rollout_batch
from .transform import transform


class TrainingDiverged(RuntimeError):
    """Mean sampled cost blew past the greedy reference; training aborted."""


@dataclass(frozen=True)
class TrainConfig:
    policy: PolicyConfig = PolicyConfig()
    epochs: int = 5
    steps: int = 40
    batch: int = 32
    lr: float = 1e-4
    m_lo: int = 6
    m_hi: int = 10
    seed: int = 0
    val_size: int = 16
    divergence_factor: float = 10.0


@dataclass
class EpochStats:
    epoch: int
    mean_sample_cost: float
    val_greedy_cost: float
    baseline_accepted: bool


def _group_by_m(instances: Sequence[Instance]) -> list[list[Instance]]:
    groups: dict[int, list[Instance]] = {}
    for inst in instances:
        groups.setdefault(inst.m, []).append(inst)
    return [groups[m] for m in sorted(groups)]


def sequence_logprob(
    model: PolicyNet, instances: Sequence[Instance], orders: Sequence[Sequence[int]]
) -> torch.Tensor:
    """Differentiable log-probability of fixed edge orders (teacher forcing).

    All instances must share one edge count. This is the same forward pass
    the rollout takes, so it also backs the finite-difference gradient check.
    """
    import numpy as np

    m = instances[0].m
    dtype = next(model.parameters()).dtype
    b = len(instances)
    features = torch.tensor(
        np.stack([transform(i).features for i in instances]), dtype=dtype
    )
    adj = torch.tensor(np.stack([transform(i).adjacency for i in instances]))
    embeddings, graph_emb = model.encode(features, adj)
    edge_emb = embeddings[:, 1:, :]
    totals = torch.tensor([inst.total_demand for inst in instances], dtype=dtype)
    demands = torch.tensor([[e.q for e in i.edges] for i in instances], dtype=dtype)
    served = torch.zeros(b, dtype=dtype)
    visited = torch.zeros(b, m, dtype=torch.bool)
    last_idx = first_idx = None
    total_logp = torch.zeros(b, dtype=dtype)
    rows = torch.arange(b)
    for t in range(m):
        remaining = 1.0 - served / totals
        logp = model.decode_step(edge_emb, graph_emb, visited, remaining, last_idx, first_idx)
        chosen = torch.tensor([orders[i][t] - 1 for i in range(b)], dtype=torch.long)
        total_logp = total_logp + logp[rows, chosen]
        served = served + demands[rows, chosen]
        visited = visited.clone()
        visited[rows, chosen] = True
        last_idx = chosen
        if first_idx is None:
            first_idx = chosen
    return total_logp


def greedy_mean_cost(model: PolicyNet, instances: Sequence[Instance]) -> float:
    """Mean tour cost of deterministic greedy rollouts (inference mode)."""
    was_training = model.training
    model.eval()
    total = 0.0
    with torch.no_grad():
        for group in _group_by_m(instances):
            orders, _ = rollout_batch(model, group, mode="greedy")
            for inst, order in zip(group, orders):
                total += dp_cost_local(inst, order)
    if was_training:
        model.train()
    return total / len(instances)


def train(
    config: TrainConfig,
    stream: Optional[Iterator[Instance]] = None,
) -> tuple[PolicyNet, list[EpochStats]]:
    torch.manual_seed(config.seed)
    gen = torch.Generator().manual_seed(config.seed)
    if stream is None:
        stream = instance_stream(config.seed, config.m_lo, config.m_hi)

    val_rng = random.Random(config.seed + 1)
    validation = [
        random_instance(val_rng, val_rng.randint(config.m_lo, config.m_hi))
        for _ in range(config.val_size)
    ]
    greedy_ref = sum(
        dp_cost_local(i, greedy_insertion(i)) for i in validation
    ) / len(validation)

    model = PolicyNet(config.policy)
    model.train()
    baseline = copy.deepcopy(model)
    baseline.eval()
    baseline_val = greedy_mean_cost(baseline, validation)
    optimizer = torch.optim.Adam(model.parameters(), lr=config.lr)

    log: list[EpochStats] = []
    for epoch in range(1, config.epochs + 1):
        epoch_cost = 0.0
        epoch_count = 0
        for _ in range(config.steps):
            batch = [next(stream) for _ in range(config.batch)]
            loss = torch.zeros((), dtype=next(model.parameters()).dtype)
            for group in _group_by_m(batch):
                orders, logps = rollout_batch(model, group, "sample", gen)
                with torch.no_grad():
                    bl_orders, _ = rollout_batch(baseline, group, "greedy")
                advantages = []
                for inst, order, bl_order in zip(group, orders, bl_orders):
                    D = shortest_paths(inst)
                    cost = dp_cost_local(inst, order, D)
                    bl_cost = dp_cost_local(inst, bl_order, D)
                    advantages.append(cost - bl_cost)
                    epoch_cost += cost
                    epoch_count += 1
                adv = torch.tensor(advantages, dtype=logps.dtype)
                loss = loss + (adv * logps).sum()
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            if epoch_cost / epoch_count > config.divergence_factor * greedy_ref:
                raise TrainingDiverged(
                    f"mean sampled cost {epoch_cost / epoch_count:.1f} exceeds "
                    f"{config.divergence_factor} x greedy reference {greedy_ref:.1f}"
                )
        val_cost = greedy_mean_cost(model, validation)
        accepted = val_cost < baseline_val
        if accepted:
            baseline = copy.deepcopy(model)
            baseline.eval()
            baseline_val = val_cost
        log.append(
            EpochStats(
                epoch=epoch,
                mean_sample_cost=epoch_cost / max(1, epoch_count),
                val_greedy_cost=val_cost,
                baseline_accepted=accepted,
            )
        )
    model.eval()
    return model, log


def save_checkpoint(path, model: PolicyNet, config: TrainConfig, log) -> None:
    from dataclasses import asdict

    torch.save(
        {
            "version": 1,
            "policy": asdict(config.policy),
            "state_dict": model.state_dict(),
            "log": [asdict(e) for e in log],
        },
        path,
    )


def load_checkpoint(path) -> PolicyNet:
    blob = torch.load(path, weights_only=False)
    if blob.get("version") != 1:
        raise ValueError(f"unsupported checkpoint version {blob.get('version')}")
    model = PolicyNet(PolicyConfig(**blob["policy"]))
    model.load_state_dict(blob["state_dict"])
    model.eval()
    return model
