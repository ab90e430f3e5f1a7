"""Basic differentiable layers: patch embedding, MLP, pixel (un)shuffle."""

from __future__ import annotations

import torch
import torch.nn as nn
import torch.nn.functional as F

from ..errors import ConfigError


class PatchEmbed(nn.Module):
    """Map non-overlapping p_H x p_W patches through one shared affine map.

    Input [B, C_in, H, W] -> token grid [B, H/p_H, W/p_W, dim].
    """

    def __init__(self, in_channels: int, dim: int, patch: tuple[int, int]):
        super().__init__()
        self.patch = patch
        self.proj = nn.Conv2d(in_channels, dim, kernel_size=patch, stride=patch)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        if x.shape[-2] % self.patch[0] or x.shape[-1] % self.patch[1]:
            raise ConfigError(f"input {tuple(x.shape[-2:])} not divisible by patch {self.patch}")
        return self.proj(x).permute(0, 2, 3, 1)


class Mlp(nn.Module):
    """Position-wise feed-forward layer with GELU."""

    def __init__(self, dim: int, ratio: int = 4):
        super().__init__()
        self.fc1 = nn.Linear(dim, dim * ratio)
        self.fc2 = nn.Linear(dim * ratio, dim)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.fc2(F.gelu(self.fc1(x)))


def pixel_unshuffle(x: torch.Tensor, r: int = 2) -> torch.Tensor:
    """[..., C, H, W] -> [..., C*r*r, H/r, W/r]; exact rearrangement."""
    if x.shape[-2] % r or x.shape[-1] % r:
        raise ConfigError(f"spatial dims {tuple(x.shape[-2:])} not divisible by r={r}")
    return F.pixel_unshuffle(x, r)


def pixel_shuffle(x: torch.Tensor, r: int = 2) -> torch.Tensor:
    """[..., C*r*r, H, W] -> [..., C, H*r, W*r]; inverse of pixel_unshuffle."""
    if x.shape[-3] % (r * r):
        raise ConfigError(f"channel dim {x.shape[-3]} not divisible by r^2={r * r}")
    return F.pixel_shuffle(x, r)


def grid_unshuffle(tokens: torch.Tensor, r: int = 2) -> torch.Tensor:
    """Token-grid variant: [B, H, W, C] -> [B, H/r, W/r, C*r*r]."""
    return pixel_unshuffle(tokens.permute(0, 3, 1, 2), r).permute(0, 2, 3, 1)


def grid_shuffle(tokens: torch.Tensor, r: int = 2) -> torch.Tensor:
    """Token-grid variant: [B, H, W, C*r*r] -> [B, H*r, W*r, C]."""
    return pixel_shuffle(tokens.permute(0, 3, 1, 2), r).permute(0, 2, 3, 1)


def backward(loss: torch.Tensor) -> None:
    """Reverse-mode gradients of a scalar loss into every parameter's .grad."""
    if loss.dim() != 0:
        raise ConfigError(f"loss must be a scalar, got shape {tuple(loss.shape)}")
    loss.backward()
