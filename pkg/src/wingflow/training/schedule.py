"""One-cycle learning-rate schedule and gradient-norm clipping."""

from __future__ import annotations

import math

import torch

from ..errors import ConfigError

# One-cycle endpoints: (start fraction, end fraction, lr_max).
PRETRAIN_SCHEDULE = (0.04, 0.001, 1e-3)
FINETUNE_SCHEDULE = (0.005, 0.001, 1e-4)


def one_cycle_lr(
    step: int,
    total: int,
    lr_max: float,
    start_frac: float = 0.04,
    end_frac: float = 0.001,
) -> float:
    """Linear ramp start_frac*lr_max -> lr_max over the first half, then
    cosine decay down to end_frac*lr_max; steps beyond ``total`` clamp."""
    if total <= 0:
        raise ConfigError(f"total steps must be positive, got {total}")
    step = min(max(step, 0), total)
    half = total / 2.0
    if step <= half:
        return lr_max * (start_frac + (1.0 - start_frac) * step / half)
    frac = (step - half) / (total - half)
    return lr_max * (end_frac + (1.0 - end_frac) * 0.5 * (1.0 + math.cos(math.pi * frac)))


def clip_grad_norm(grads: list[torch.Tensor], max_norm: float) -> list[torch.Tensor]:
    """Scale all gradients by max_norm/norm iff the global L2 norm exceeds it."""
    if max_norm <= 0:
        raise ConfigError(f"max_norm must be positive, got {max_norm}")
    grads = [g for g in grads if g is not None]
    if not grads:
        return grads
    total = torch.sqrt(sum((g.detach() ** 2).sum() for g in grads))
    if total > max_norm:
        scale = max_norm / total
        for g in grads:
            g.detach().mul_(scale)
    return grads
