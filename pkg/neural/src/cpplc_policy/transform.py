"""Line-graph view of an instance: each edge becomes a node so a node-
embedding encoder can attend over edges. Node 0 is a virtual zero-length,
zero-demand depot edge anchored at node 1."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instances import Instance


@dataclass(frozen=True)
class TransformedGraph:
    """Node features (m+1, 2) in [0, 1] and symmetric adjacency (m+1, m+1).

    Feature pairs are (length / total length, demand / total demand); the
    depot node's features are (0, 0). Nodes are adjacent iff their original
    edges share an endpoint (self-adjacency included so attention always has
    a target); the depot counts as incident to node 1.
    """

    features: np.ndarray
    adjacency: np.ndarray

    @property
    def m(self) -> int:
        return self.features.shape[0] - 1


def transform(instance: Instance) -> TransformedGraph:
    m = instance.m
    total_d = sum(e.d for e in instance.edges)
    total_q = sum(e.q for e in instance.edges)
    features = np.zeros((m + 1, 2))
    for eid, e in enumerate(instance.edges, start=1):
        features[eid, 0] = e.d / total_d if total_d > 0 else 0.0
        features[eid, 1] = e.q / total_q if total_q > 0 else 0.0
    ends = [(1, 1)] + [(e.u, e.v) for e in instance.edges]
    adjacency = np.zeros((m + 1, m + 1), dtype=bool)
    for i, (a, b) in enumerate(ends):
        for j, (c, d) in enumerate(ends):
            adjacency[i, j] = a in (c, d) or b in (c, d)
    return TransformedGraph(features=features, adjacency=adjacency)
