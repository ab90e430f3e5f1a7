"""Hierarchical windowed-attention surrogates.

The surface-flow variant is a U-shaped stack: token dims double at each
down-sampling stage and halve back up, with skip connections concatenating
pre-downsample tokens into the mirror stage. The coefficient variant keeps
only the encoder (down-sampling + latent stages) and compresses the latent
tokens with an attention pooling layer.
"""

from __future__ import annotations

import torch
import torch.nn as nn

from ..errors import ConfigError
from ..nn.blocks import ConditionEmbed, TransformerBlock
from ..nn.layers import PatchEmbed, grid_shuffle, grid_unshuffle
from .config import ModelConfig

# Operating-condition normalization applied before the condition MLP.
MACH_CENTER = 0.8
MACH_SCALE = 0.1
AOA_SCALE = 10.0

IN_CHANNELS = 3  # surface mesh coordinates (x, y, z)


def normalize_condition(cond: torch.Tensor) -> torch.Tensor:
    """Map raw (mach, aoa_deg) to O(1) network inputs."""
    return torch.stack(
        [(cond[:, 0] - MACH_CENTER) / MACH_SCALE, cond[:, 1] / AOA_SCALE], dim=1
    )


class Stage(nn.Module):
    """A run of transformer blocks; windows shift on every other block."""

    def __init__(self, dim: int, depth: int, cfg: ModelConfig):
        super().__init__()
        self.blocks = nn.ModuleList(
            TransformerBlock(
                dim,
                cfg.cond_dim,
                cfg.window,
                cfg.heads,
                shifted=(i % 2 == 1),
                mlp_ratio=cfg.mlp_ratio,
            )
            for i in range(depth)
        )

    def forward(self, x: torch.Tensor, cond: torch.Tensor) -> torch.Tensor:
        for block in self.blocks:
            x = block(x, cond)
        return x


class Encoder(nn.Module):
    """Patch embedding, down-sampling stages, and the latent stage."""

    def __init__(self, cfg: ModelConfig):
        super().__init__()
        dims = cfg.stage_dims
        self.cfg = cfg
        self.patch_embed = PatchEmbed(IN_CHANNELS, dims[0], cfg.patch)
        self.cond_embed = ConditionEmbed(cfg.n_cond, cfg.cond_dim)
        self.stages = nn.ModuleList(
            Stage(dims[s], cfg.depths[s], cfg) for s in range(cfg.n_down + 1)
        )
        self.downs = nn.ModuleList(
            nn.Linear(4 * dims[s], dims[s + 1]) for s in range(cfg.n_down)
        )

    def forward(self, mesh: torch.Tensor, cond_raw: torch.Tensor):
        """Returns (latent tokens, skip tokens per down stage, condition embedding)."""
        self._check_input(mesh)
        cond = self.cond_embed(normalize_condition(cond_raw))
        x = self.patch_embed(mesh)
        skips = []
        for s in range(self.cfg.n_down):
            x = self.stages[s](x, cond)
            skips.append(x)
            x = self.downs[s](grid_unshuffle(x, 2))
        x = self.stages[-1](x, cond)
        return x, skips, cond

    def _check_input(self, mesh: torch.Tensor) -> None:
        scale = self.cfg.token_downscale()
        h, w = mesh.shape[-2:]
        if h % scale or w % scale:
            raise ConfigError(
                f"input {h}x{w} must be divisible by patch*2^downsamples = {scale}"
            )


class SurfaceFlowModel(nn.Module):
    """Mesh + operating condition -> surface flow channels at mesh resolution."""

    def __init__(self, cfg: ModelConfig):
        super().__init__()
        if cfg.variant != "surf":
            raise ConfigError(f"SurfaceFlowModel requires variant 'surf', got {cfg.variant!r}")
        self.cfg = cfg
        dims = cfg.stage_dims
        half = cfg.n_down
        self.encoder = Encoder(cfg)
        self.ups = nn.ModuleList(
            nn.Linear(dims[s], 4 * dims[s + 1]) for s in range(half, 2 * half)
        )
        self.skip_fuse = nn.ModuleList(
            nn.Linear(2 * dims[s + 1], dims[s + 1]) for s in range(half, 2 * half)
        )
        self.dec_stages = nn.ModuleList(
            Stage(dims[s], cfg.depths[s], cfg) for s in range(half + 1, 2 * half + 1)
        )
        self.head = nn.Linear(dims[-1], cfg.n_var * cfg.patch[0] * cfg.patch[1])

    def forward(self, mesh: torch.Tensor, cond_raw: torch.Tensor) -> torch.Tensor:
        x, skips, cond = self.encoder(mesh, cond_raw)
        for i, stage in enumerate(self.dec_stages):
            x = grid_shuffle(self.ups[i](x), 2)
            x = self.skip_fuse[i](torch.cat([x, skips[-1 - i]], dim=-1))
            x = stage(x, cond)
        out = self.head(x)  # [B, Hp, Wp, n_var * pH * pW]
        b, hp, wp, _ = out.shape
        ph, pw = self.cfg.patch
        out = out.view(b, hp, wp, self.cfg.n_var, ph, pw)
        out = out.permute(0, 3, 1, 4, 2, 5).reshape(b, self.cfg.n_var, hp * ph, wp * pw)
        return out


class AttentionPool(nn.Module):
    """Compress a token grid to one vector with a single learned query."""

    def __init__(self, dim: int):
        super().__init__()
        self.query = nn.Parameter(torch.randn(dim) * dim**-0.5)
        self.k = nn.Linear(dim, dim)
        self.v = nn.Linear(dim, dim)

    def forward(self, tokens: torch.Tensor) -> torch.Tensor:
        b = tokens.shape[0]
        flat = tokens.reshape(b, -1, tokens.shape[-1])
        logits = (self.k(flat) @ self.query) / self.query.shape[0] ** 0.5
        weights = logits.softmax(dim=-1)
        return (weights.unsqueeze(-1) * self.v(flat)).sum(dim=1)


class CoefficientModel(nn.Module):
    """Mesh + operating condition -> (cl, cd, cmz) via attention pooling."""

    def __init__(self, cfg: ModelConfig):
        super().__init__()
        if cfg.variant != "coef":
            raise ConfigError(f"CoefficientModel requires variant 'coef', got {cfg.variant!r}")
        self.cfg = cfg
        self.encoder = Encoder(cfg)
        latent_dim = cfg.stage_dims[cfg.n_down]
        self.pool = AttentionPool(latent_dim)
        self.head = nn.Linear(latent_dim, 3)

    def forward(self, mesh: torch.Tensor, cond_raw: torch.Tensor) -> torch.Tensor:
        x, _, _ = self.encoder(mesh, cond_raw)
        return self.head(self.pool(x))


def build_model(cfg: ModelConfig, seed: int | None = None) -> nn.Module:
    """Construct a surf or coef model, optionally with seeded initialization."""
    if seed is not None:
        torch.manual_seed(seed)
    return SurfaceFlowModel(cfg) if cfg.variant == "surf" else CoefficientModel(cfg)


def param_count(model: nn.Module, trainable_only: bool = False) -> int:
    """Exact number of (optionally trainable) parameters."""
    return sum(
        p.numel() for p in model.parameters() if p.requires_grad or not trainable_only
    )
