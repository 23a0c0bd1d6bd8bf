"""Attention encoder and masked autoregressive decoder over edge nodes.

Encoder: a learned input projection (a separate one for the virtual depot
node), then N layers of adjacency-masked multi-head self-attention and a
node-wise feed-forward block, each wrapped in a skip connection and batch
normalization. Decoder: a context vector [graph mean, last pick, first
pick, remaining load] queries the edge embeddings through one multi-head
glimpse and a final single-head layer whose tanh-clipped logits are masked
on visited edges and softmaxed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import torch
from torch import nn


@dataclass(frozen=True)
class PolicyConfig:
    hidden: int = 128
    layers: int = 3
    heads: int = 8
    ff: int = 512
    clip: float = 10.0

    def __post_init__(self) -> None:
        if self.hidden % self.heads != 0:
            raise ValueError("hidden size must be divisible by the head count")

    @property
    def head_dim(self) -> int:
        return self.hidden // self.heads


class MaskedMultiHead(nn.Module):
    """Scaled dot-product self-attention; pairs outside the mask get -inf
    compatibility so no message passes between non-adjacent nodes."""

    def __init__(self, hidden: int, heads: int) -> None:
        super().__init__()
        self.heads = heads
        self.head_dim = hidden // heads
        self.wq = nn.Linear(hidden, hidden, bias=False)
        self.wk = nn.Linear(hidden, hidden, bias=False)
        self.wv = nn.Linear(hidden, hidden, bias=False)
        self.wo = nn.Linear(hidden, hidden, bias=False)

    def attention_weights(self, h: torch.Tensor, adj: torch.Tensor) -> torch.Tensor:
        """Per-head attention weights (B, H, n, n); zero on non-adjacent pairs."""
        b, n, _ = h.shape
        shape = (b, n, self.heads, self.head_dim)
        q = self.wq(h).view(shape).transpose(1, 2)
        k = self.wk(h).view(shape).transpose(1, 2)
        scores = q @ k.transpose(-2, -1) / math.sqrt(self.head_dim)
        scores = scores.masked_fill(~adj[:, None, :, :], float("-inf"))
        return torch.softmax(scores, dim=-1)

    def forward(self, h: torch.Tensor, adj: torch.Tensor) -> torch.Tensor:
        b, n, dim = h.shape
        attn = self.attention_weights(h, adj)
        v = self.wv(h).view(b, n, self.heads, self.head_dim).transpose(1, 2)
        out = (attn @ v).transpose(1, 2).reshape(b, n, dim)
        return self.wo(out)


class NodeBatchNorm(nn.Module):
    """BatchNorm1d over the flattened node dimension, with learned affine."""

    def __init__(self, hidden: int) -> None:
        super().__init__()
        self.bn = nn.BatchNorm1d(hidden)

    def forward(self, h: torch.Tensor) -> torch.Tensor:
        b, n, dim = h.shape
        return self.bn(h.reshape(b * n, dim)).view(b, n, dim)


class EncoderLayer(nn.Module):
    def __init__(self, cfg: PolicyConfig) -> None:
        super().__init__()
        self.mha = MaskedMultiHead(cfg.hidden, cfg.heads)
        self.bn1 = NodeBatchNorm(cfg.hidden)
        self.ff = nn.Sequential(
            nn.Linear(cfg.hidden, cfg.ff),
            nn.ReLU(),
            nn.Linear(cfg.ff, cfg.hidden),
        )
        self.bn2 = NodeBatchNorm(cfg.hidden)

    def forward(self, h: torch.Tensor, adj: torch.Tensor) -> torch.Tensor:
        h = self.bn1(h + self.mha(h, adj))
        return self.bn2(h + self.ff(h))


class PolicyNet(nn.Module):
    def __init__(self, cfg: PolicyConfig) -> None:
        super().__init__()
        self.cfg = cfg
        d = cfg.hidden
        self.node_in = nn.Linear(2, d)
        self.depot_in = nn.Linear(2, d)
        self.encoder = nn.ModuleList(EncoderLayer(cfg) for _ in range(cfg.layers))
        self.v_last = nn.Parameter(torch.empty(d))
        self.v_first = nn.Parameter(torch.empty(d))
        self.glimpse_q = nn.Linear(3 * d + 1, d, bias=False)
        self.glimpse_k = nn.Linear(d, d, bias=False)
        self.glimpse_v = nn.Linear(d, d, bias=False)
        self.glimpse_out = nn.Linear(d, d, bias=False)
        self.final_q = nn.Linear(d, d, bias=False)
        self.final_k = nn.Linear(d, d, bias=False)
        bound = 1.0 / math.sqrt(d)
        nn.init.uniform_(self.v_last, -bound, bound)
        nn.init.uniform_(self.v_first, -bound, bound)

    def encode(
        self, features: torch.Tensor, adj: torch.Tensor
    ) -> tuple[torch.Tensor, torch.Tensor]:
        """Features (B, m+1, 2) and adjacency (B, m+1, m+1) -> per-node
        embeddings (B, m+1, d) and the mean graph embedding (B, d).

        The graph embedding averages the m edge nodes (the decoder never
        selects the depot node)."""
        depot = self.depot_in(features[:, :1, :])
        nodes = self.node_in(features[:, 1:, :])
        h = torch.cat([depot, nodes], dim=1)
        for layer in self.encoder:
            h = layer(h, adj)
        return h, h[:, 1:, :].mean(dim=1)

    def clipped_logits(
        self,
        embeddings: torch.Tensor,
        graph_emb: torch.Tensor,
        visited: torch.Tensor,
        remaining: torch.Tensor,
        last_idx: torch.Tensor | None,
        first_idx: torch.Tensor | None,
    ) -> torch.Tensor:
        """Tanh-clipped logits (B, m) before the visited mask.

        ``embeddings`` holds the m edge nodes only; ``visited`` is a bool
        mask (B, m) applied inside the glimpse; ``remaining`` is the
        normalized load (B,); index tensors are None on the first step,
        where learned placeholders stand in for the last and first picks."""
        b, m, d = embeddings.shape
        if last_idx is None:
            h_last = self.v_last.expand(b, d)
            h_first = self.v_first.expand(b, d)
        else:
            h_last = embeddings[torch.arange(b), last_idx]
            h_first = embeddings[torch.arange(b), first_idx]
        context = torch.cat([graph_emb, h_last, h_first, remaining[:, None]], dim=1)

        heads = self.cfg.heads
        hd = self.cfg.head_dim
        q = self.glimpse_q(context).view(b, heads, 1, hd)
        k = self.glimpse_k(embeddings).view(b, m, heads, hd).transpose(1, 2)
        v = self.glimpse_v(embeddings).view(b, m, heads, hd).transpose(1, 2)
        scores = (q @ k.transpose(-2, -1)).squeeze(2) / math.sqrt(hd)
        scores = scores.masked_fill(visited[:, None, :], float("-inf"))
        attn = torch.softmax(scores, dim=-1)
        glimpse = (attn[:, :, None, :] @ v).reshape(b, heads * hd)
        new_context = self.glimpse_out(glimpse)

        q2 = self.final_q(new_context)
        k2 = self.final_k(embeddings)
        logits = (k2 @ q2[:, :, None]).squeeze(2) / math.sqrt(d)
        return self.cfg.clip * torch.tanh(logits)

    def decode_step(
        self,
        embeddings: torch.Tensor,
        graph_emb: torch.Tensor,
        visited: torch.Tensor,
        remaining: torch.Tensor,
        last_idx: torch.Tensor | None,
        first_idx: torch.Tensor | None,
    ) -> torch.Tensor:
        """One decoding step; returns log-probabilities (B, m) over edges,
        with visited edges at probability exactly zero."""
        logits = self.clipped_logits(
            embeddings, graph_emb, visited, remaining, last_idx, first_idx
        )
        logits = logits.masked_fill(visited, float("-inf"))
        return torch.log_softmax(logits, dim=1)
