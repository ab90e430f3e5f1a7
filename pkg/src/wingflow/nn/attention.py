"""Windowed multi-head self-attention with cyclic shift and log-spaced bias.

Tokens are partitioned into w x w windows and attention is computed inside
each window. Shifted layers cyclically roll the grid by (w/2, w/2) first and
mask attention between cells that come from non-adjacent regions of the
original grid. The per-head additive bias is produced by a small MLP over the
log-spaced relative offset sign(d) * log(1 + |d|) of each token pair.
"""

from __future__ import annotations

import torch
import torch.nn as nn
import torch.nn.functional as F

from ..errors import ConfigError

NEG_INF = float("-inf")
BIAS_HIDDEN = 64


class RelativeBiasMlp(nn.Module):
    """2-layer MLP mapping a relative (di, dj) offset to per-head biases."""

    def __init__(self, heads: int, hidden: int = BIAS_HIDDEN):
        super().__init__()
        self.fc1 = nn.Linear(2, hidden)
        self.fc2 = nn.Linear(hidden, heads)

    def forward(self, coords: torch.Tensor) -> torch.Tensor:
        return self.fc2(F.relu(self.fc1(coords)))


def log_spaced_coords(window: int, dtype=torch.float32) -> torch.Tensor:
    """sign(d) * log(1+|d|) features for all offsets in {-w+1..w-1}^2, [(2w-1)^2, 2]."""
    d = torch.arange(-(window - 1), window, dtype=dtype)
    di, dj = torch.meshgrid(d, d, indexing="ij")
    coords = torch.stack([di, dj], dim=-1).reshape(-1, 2)
    return torch.sign(coords) * torch.log1p(coords.abs())


def relative_bias(bias_mlp: RelativeBiasMlp, window: int) -> torch.Tensor:
    """Bias table [(2w-1)^2, heads] for every in-window relative offset."""
    coords = log_spaced_coords(window, dtype=next(bias_mlp.parameters()).dtype)
    return bias_mlp(coords.to(next(bias_mlp.parameters()).device))


def relative_index(window: int) -> torch.Tensor:
    """[w^2, w^2] lookup of each (query, key) pair into the bias table."""
    pos = torch.stack(
        torch.meshgrid(torch.arange(window), torch.arange(window), indexing="ij"), dim=-1
    ).reshape(-1, 2)
    rel = pos[:, None, :] - pos[None, :, :] + (window - 1)
    return rel[..., 0] * (2 * window - 1) + rel[..., 1]


def pad_to_windows(grid_hw: tuple[int, int], window: int) -> tuple[int, int]:
    h, w = grid_hw
    return (-h) % window, (-w) % window


def attention_mask(
    height: int,
    width: int,
    window: int,
    shift: int,
    valid: torch.Tensor | None = None,
    device=None,
) -> torch.Tensor | None:
    """Additive {0, -inf} mask per window, [nW, w^2, w^2].

    After a cyclic roll by (shift, shift) the first ``shift`` rows/columns
    hold wrapped content, so pairs on opposite sides of those band borders are
    masked. ``valid`` marks real (non-padded) cells in the unrolled grid;
    padded keys are masked everywhere. The diagonal stays open so fully
    masked query rows still produce finite softmax output. Returns None when
    no masking is needed.
    """
    if shift == 0 and valid is None:
        return None
    idx = torch.arange(height, device=device)
    jdx = torch.arange(width, device=device)
    region = 2 * (idx[:, None] < shift) + (jdx[None, :] < shift)
    if valid is None:
        ok = torch.ones(height, width, dtype=torch.bool, device=device)
    else:
        ok = torch.roll(valid, shifts=(shift, shift), dims=(0, 1))
    region_w = _partition_hw(region[None, :, :, None].float(), window).squeeze(-1)  # [nW, w^2]
    ok_w = _partition_hw(ok[None, :, :, None].float(), window).squeeze(-1) > 0.5
    same_region = region_w[:, :, None] == region_w[:, None, :]
    visible = same_region & ok_w[:, None, :]
    mask = torch.where(visible, 0.0, NEG_INF)
    eye = torch.eye(window * window, dtype=torch.bool, device=device)
    return mask.masked_fill(eye[None], 0.0)


def _partition_hw(x: torch.Tensor, window: int) -> torch.Tensor:
    """[B, H, W, C] -> [B*nW, w^2, C] in row-major window order."""
    b, h, w, c = x.shape
    x = x.view(b, h // window, window, w // window, window, c)
    return x.permute(0, 1, 3, 2, 4, 5).reshape(-1, window * window, c)


def _reverse_hw(x: torch.Tensor, window: int, b: int, h: int, w: int) -> torch.Tensor:
    c = x.shape[-1]
    x = x.view(b, h // window, w // window, window, window, c)
    return x.permute(0, 1, 3, 2, 4, 5).reshape(b, h, w, c)


class WindowAttention(nn.Module):
    """W-MSA / SW-MSA over a token grid [B, H, W, C].

    Separate query/key/value projections (so fine-tuning strategies can
    target them individually), a shared output projection, and a per-layer
    relative-bias MLP.
    """

    def __init__(self, dim: int, window: int, heads: int, shifted: bool):
        super().__init__()
        if dim % heads:
            raise ConfigError(f"dim {dim} not divisible by heads {heads}")
        self.dim = dim
        self.window = window
        self.heads = heads
        self.head_dim = dim // heads
        self.shifted = shifted
        self.q = nn.Linear(dim, dim)
        self.k = nn.Linear(dim, dim)
        self.v = nn.Linear(dim, dim)
        self.proj = nn.Linear(dim, dim)
        self.bias_mlp = RelativeBiasMlp(heads)
        self.register_buffer("rel_index", relative_index(window), persistent=False)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        b, h, w, c = x.shape
        win = self.window
        shift = win // 2 if self.shifted else 0

        pad_h, pad_w = pad_to_windows((h, w), win)
        valid = None
        if pad_h or pad_w:
            x = F.pad(x, (0, 0, 0, pad_w, 0, pad_h))
            valid = torch.zeros(h + pad_h, w + pad_w, dtype=torch.bool, device=x.device)
            valid[:h, :w] = True
        hp, wp = x.shape[1], x.shape[2]

        if shift:
            x = torch.roll(x, shifts=(shift, shift), dims=(1, 2))
        mask = attention_mask(hp, wp, win, shift, valid, device=x.device)

        tokens = _partition_hw(x, win)  # [B*nW, w^2, C]
        n = tokens.shape[1]
        q = self.q(tokens).view(-1, n, self.heads, self.head_dim).transpose(1, 2)
        k = self.k(tokens).view(-1, n, self.heads, self.head_dim).transpose(1, 2)
        v = self.v(tokens).view(-1, n, self.heads, self.head_dim).transpose(1, 2)

        attn = (q @ k.transpose(-2, -1)) / self.head_dim**0.5
        bias = relative_bias(self.bias_mlp, win)[self.rel_index]  # [w^2, w^2, heads]
        attn = attn + bias.permute(2, 0, 1)[None]
        if mask is not None:
            n_windows = mask.shape[0]
            attn = attn.view(b, n_windows, self.heads, n, n) + mask[None, :, None]
            attn = attn.view(-1, self.heads, n, n)
        attn = attn.softmax(dim=-1)

        out = (attn @ v).transpose(1, 2).reshape(-1, n, c)
        out = self.proj(out)
        out = _reverse_hw(out, win, b, hp, wp)
        if shift:
            out = torch.roll(out, shifts=(-shift, -shift), dims=(1, 2))
        return out[:, :h, :w]
