"""Low-rank adapters on the attention query/value projections.

The adapted projection is W' = W + (alpha/r) * W1 @ W2 with W1 [out, r]
small-uniform initialized and W2 [r, in] zero-initialized, so a freshly
applied adapter is an exact no-op. Merging folds the correction into the base
weight and removes the adapter modules.
"""

from __future__ import annotations

import torch
import torch.nn as nn

from ..errors import ConfigError
from ..nn.attention import WindowAttention
from .config import LoRAConfig


class LoRALinear(nn.Module):
    """A frozen-base linear layer plus a trainable low-rank correction."""

    def __init__(self, base: nn.Linear, rank: int, alpha: float):
        super().__init__()
        self.base = base
        self.rank = rank
        self.alpha = alpha
        out_f, in_f = base.weight.shape
        bound = 1.0 / in_f**0.5
        w1 = torch.empty(out_f, rank, dtype=base.weight.dtype).uniform_(-bound, bound)
        self.lora_out = nn.Parameter(w1)
        self.lora_in = nn.Parameter(torch.zeros(rank, in_f, dtype=base.weight.dtype))

    @property
    def scale(self) -> float:
        return self.alpha / self.rank

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.base(x) + self.scale * ((x @ self.lora_in.T) @ self.lora_out.T)

    def merged(self) -> nn.Linear:
        out_f, in_f = self.base.weight.shape
        fused = nn.Linear(in_f, out_f, bias=self.base.bias is not None)
        fused = fused.to(self.base.weight.dtype)
        with torch.no_grad():
            fused.weight.copy_(self.base.weight + self.scale * self.lora_out @ self.lora_in)
            if self.base.bias is not None:
                fused.bias.copy_(self.base.bias)
        return fused


def _attention_modules(model: nn.Module) -> list[WindowAttention]:
    return [m for m in model.modules() if isinstance(m, WindowAttention)]


def apply_lora(model: nn.Module, cfg: LoRAConfig) -> nn.Module:
    """Wrap every attention query/value projection with an adapter, in place."""
    attns = _attention_modules(model)
    if not attns:
        raise ConfigError("model has no attention layers to adapt")
    for attn in attns:
        if isinstance(attn.q, LoRALinear) or isinstance(attn.v, LoRALinear):
            raise ConfigError("LoRA adapters already applied")
        attn.q = LoRALinear(attn.q, cfg.rank, cfg.alpha)
        attn.v = LoRALinear(attn.v, cfg.rank, cfg.alpha)
    return model


def merge_lora(model: nn.Module) -> nn.Module:
    """Fold adapters into the base weights and drop the adapter parameters."""
    merged_any = False
    for attn in _attention_modules(model):
        if isinstance(attn.q, LoRALinear):
            attn.q = attn.q.merged()
            merged_any = True
        if isinstance(attn.v, LoRALinear):
            attn.v = attn.v.merged()
            merged_any = True
    if not merged_any:
        raise ConfigError("no LoRA adapters to merge")
    return model


def lora_parameters(model: nn.Module) -> list[nn.Parameter]:
    """Only the adapter matrices (the trainable set under the lora strategy)."""
    return [p for name, p in model.named_parameters() if "lora_" in name]


def attention_parameters(model: nn.Module) -> list[nn.Parameter]:
    """Q/K/V projection weights and biases (the finetune_attn trainable set)."""
    params = []
    for attn in _attention_modules(model):
        for layer in (attn.q, attn.k, attn.v):
            params.extend(layer.parameters())
    return params
