"""Differentiable layer primitives for the surrogate models."""

from .attention import (
    RelativeBiasMlp,
    WindowAttention,
    attention_mask,
    log_spaced_coords,
    relative_bias,
    relative_index,
)
from .blocks import ConditionEmbed, TransformerBlock
from .layers import (
    Mlp,
    PatchEmbed,
    backward,
    grid_shuffle,
    grid_unshuffle,
    pixel_shuffle,
    pixel_unshuffle,
)

__all__ = [
    "PatchEmbed",
    "Mlp",
    "pixel_shuffle",
    "pixel_unshuffle",
    "grid_shuffle",
    "grid_unshuffle",
    "backward",
    "WindowAttention",
    "RelativeBiasMlp",
    "relative_bias",
    "relative_index",
    "log_spaced_coords",
    "attention_mask",
    "ConditionEmbed",
    "TransformerBlock",
]
