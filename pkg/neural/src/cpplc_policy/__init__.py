"""Attention-based autoregressive policy for load-dependent postman tours,
trained with REINFORCE against a greedy-rollout baseline. Talks to the
solver toolchain through the shared CPPLC/CPPLC-SOL text formats."""

from .costs import (
    dp_cost_local,
    dp_cost_local_batch,
    dp_directions_local,
    greedy_insertion,
    shortest_paths,
)
from .instances import (
    Edge,
    Instance,
    instance_stream,
    make_instance,
    random_instance,
    read_instance,
    write_instance,
    write_solution,
)
from .model import PolicyConfig, PolicyNet
from .rollout import EpisodeState, episode_states, rollout, rollout_batch
from .train import (
    EpochStats,
    TrainConfig,
    TrainingDiverged,
    greedy_mean_cost,
    load_checkpoint,
    save_checkpoint,
    sequence_logprob,
    train,
)
from .transform import TransformedGraph, transform

__version__ = "0.1.0"

__all__ = [
    "Edge",
    "EpisodeState",
    "EpochStats",
    "Instance",
    "PolicyConfig",
    "PolicyNet",
    "TrainConfig",
    "TrainingDiverged",
    "TransformedGraph",
    "dp_cost_local",
    "dp_cost_local_batch",
    "dp_directions_local",
    "episode_states",
    "greedy_insertion",
    "greedy_mean_cost",
    "instance_stream",
    "load_checkpoint",
    "make_instance",
    "random_instance",
    "read_instance",
    "rollout",
    "rollout_batch",
    "save_checkpoint",
    "sequence_logprob",
    "shortest_paths",
    "train",
    "transform",
    "write_instance",
    "write_solution",
]
