"""Transformer block with adaLN-Zero operating-condition injection.

The six per-block modulation vectors (shift/scale/gate for the attention and
feed-forward halves) are regressed from the condition embedding by an affine
map whose weights and biases start at zero, so every block is the identity at
initialization and the network output is condition-independent until training
moves the gates.
"""

from __future__ import annotations

import torch
import torch.nn as nn

from .attention import WindowAttention
from .layers import Mlp


class ConditionEmbed(nn.Module):
    """2-layer MLP from the normalized condition vector to the embedding."""

    def __init__(self, n_cond: int, dim: int):
        super().__init__()
        self.fc1 = nn.Linear(n_cond, dim)
        self.fc2 = nn.Linear(dim, dim)

    def forward(self, cond: torch.Tensor) -> torch.Tensor:
        return self.fc2(torch.nn.functional.silu(self.fc1(cond)))


class TransformerBlock(nn.Module):
    """Pre-norm windowed-attention block, conditioned via adaLN-Zero."""

    def __init__(
        self,
        dim: int,
        cond_dim: int,
        window: int,
        heads: int,
        shifted: bool,
        mlp_ratio: int = 4,
    ):
        super().__init__()
        self.norm1 = nn.LayerNorm(dim, elementwise_affine=False, eps=1e-6)
        self.attn = WindowAttention(dim, window, heads, shifted)
        self.norm2 = nn.LayerNorm(dim, elementwise_affine=False, eps=1e-6)
        self.mlp = Mlp(dim, mlp_ratio)
        self.modulation = nn.Linear(cond_dim, 6 * dim)
        nn.init.zeros_(self.modulation.weight)
        nn.init.zeros_(self.modulation.bias)

    def forward(self, x: torch.Tensor, cond: torch.Tensor) -> torch.Tensor:
        mod = self.modulation(cond)[:, None, None, :]  # [B, 1, 1, 6C]
        shift1, scale1, gate1, shift2, scale2, gate2 = mod.chunk(6, dim=-1)
        x = x + gate1 * self.attn(self.norm1(x) * (1 + scale1) + shift1)
        x = x + gate2 * self.mlp(self.norm2(x) * (1 + scale2) + shift2)
        return x
