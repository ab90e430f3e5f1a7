"""Training loop: AdamW, one-cycle schedule, norm clipping, strategy-based
parameter freezing, and seeded epoch shuffling.

The model consumes standardized mesh coordinates and emits standardized flow
channels; the coefficient loss term de-standardizes predictions before
integration so lift/drag are compared in physical units.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
import torch

from ..aero.metrics import field_error
from ..data.training_data import FlowStats, TrainingData
from ..errors import ConfigError
from ..model.lora import attention_parameters, lora_parameters
from .losses import coefficient_loss, surface_loss
from .schedule import clip_grad_norm, one_cycle_lr

STRATEGIES = ("pretrain", "finetune_full", "finetune_attn", "finetune_lora")

ADAM_BETAS = (0.9, 0.999)
ADAM_EPS = 1e-8
WEIGHT_DECAY = 1e-4


@dataclass
class TrainConfig:
    batch_size: int = 16
    total_steps: int = 1000
    lr_max: float = 1e-3
    lr_start_frac: float = 0.04
    lr_end_frac: float = 0.001
    clip_norm: float = 1.0
    lambda_coef: float = 0.0
    seed: int = 0
    strategy: str = "pretrain"
    log_every: int = 100
    val_every: int = 0     # 0 disables in-loop validation
    val_samples: int = 32

    def __post_init__(self):
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.lr_max <= 0:
            raise ConfigError(f"lr_max must be > 0, got {self.lr_max}")
        if self.lambda_coef < 0:
            raise ConfigError(f"lambda_coef must be >= 0, got {self.lambda_coef}")
        if self.clip_norm <= 0:
            raise ConfigError(f"clip_norm must be > 0, got {self.clip_norm}")
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")

    @classmethod
    def finetune(cls, strategy: str = "finetune_full", **kwargs) -> "TrainConfig":
        """Fine-tuning defaults: reduced initial and maximum learning rate."""
        kwargs.setdefault("lr_max", 1e-4)
        kwargs.setdefault("lr_start_frac", 0.005)
        return cls(strategy=strategy, **kwargs)

    def to_json(self) -> dict:
        return {
            "batch_size": self.batch_size,
            "total_steps": self.total_steps,
            "lr_max": self.lr_max,
            "lr_start_frac": self.lr_start_frac,
            "lr_end_frac": self.lr_end_frac,
            "clip_norm": self.clip_norm,
            "lambda_coef": self.lambda_coef,
            "seed": self.seed,
            "strategy": self.strategy,
        }


@dataclass
class TrainResult:
    history: list[dict]
    stats: FlowStats
    diverged: bool = False
    wall_time: float = 0.0


def select_trainable(model: torch.nn.Module, strategy: str) -> list[torch.nn.Parameter]:
    """Freeze everything outside the strategy's trainable set."""
    if strategy in ("pretrain", "finetune_full"):
        params = list(model.parameters())
    elif strategy == "finetune_attn":
        params = attention_parameters(model)
    else:
        params = lora_parameters(model)
        if not params:
            raise ConfigError("finetune_lora requires LoRA adapters (apply_lora first)")
    chosen = {id(p) for p in params}
    for p in model.parameters():
        p.requires_grad_(id(p) in chosen)
    return params


class _BatchSampler:
    """Seeded epoch shuffling with cycling."""

    def __init__(self, n: int, batch_size: int, seed: int):
        self.n = n
        self.batch_size = min(batch_size, n)
        self.gen = torch.Generator().manual_seed(seed)
        self.order = torch.empty(0, dtype=torch.long)
        self.pos = 0

    def next(self) -> torch.Tensor:
        if self.pos + self.batch_size > len(self.order):
            self.order = torch.randperm(self.n, generator=self.gen)
            self.pos = 0
        batch = self.order[self.pos : self.pos + self.batch_size]
        self.pos += self.batch_size
        return batch


def train(
    model: torch.nn.Module,
    data: TrainingData,
    cfg: TrainConfig,
    val_data: TrainingData | None = None,
    stats: FlowStats | None = None,
) -> TrainResult:
    """Optimize ``model`` in place; returns history and the stats used."""
    t0 = time.time()
    dtype = next(model.parameters()).dtype
    stats = stats or data.compute_stats()
    views = stats.torch_views(dtype)
    data = data.to(dtype)

    mesh_std = (data.mesh - views["mesh_mean"]) / views["mesh_std"]
    flow_std = (data.flow - views["flow_mean"]) / views["flow_std"]
    # coefficient spread of the training split keeps the lift/drag loss term
    # in the same standardized units as the surface term
    coef_scales = (
        max(float(data.coeffs[:, 0].to(torch.float64).std()), 1e-6),
        max(float(data.coeffs[:, 1].to(torch.float64).std()), 1e-6),
    )

    params = select_trainable(model, cfg.strategy)
    opt = torch.optim.AdamW(
        params,
        lr=cfg.lr_max * cfg.lr_start_frac,
        betas=ADAM_BETAS,
        eps=ADAM_EPS,
        weight_decay=WEIGHT_DECAY,
    )
    sampler = _BatchSampler(len(data), cfg.batch_size, cfg.seed)
    history: list[dict] = []
    diverged = False

    for step in range(cfg.total_steps):
        idx = sampler.next()
        pred_std = model(mesh_std[idx], data.cond[idx])
        l_surf = surface_loss(pred_std, flow_std[idx])  # standardized units
        if cfg.lambda_coef > 0.0:
            pred_raw = pred_std * views["flow_std"] + views["flow_mean"]
            geom = data.geom.gather(data.shape_index[idx])
            l_coef = coefficient_loss(
                pred_raw, data.flow[idx], geom, data.cond[idx, 1], coef_scales
            )
            loss = l_surf + cfg.lambda_coef * l_coef
        else:
            l_coef = None
            loss = l_surf

        if not torch.isfinite(loss):
            diverged = True
            history.append({"step": step, "event": "diverged"})
            break

        opt.zero_grad(set_to_none=True)
        loss.backward()
        clip_grad_norm([p.grad for p in params], cfg.clip_norm)
        lr = one_cycle_lr(step, cfg.total_steps, cfg.lr_max, cfg.lr_start_frac, cfg.lr_end_frac)
        for group in opt.param_groups:
            group["lr"] = lr
        opt.step()

        if step % cfg.log_every == 0 or step == cfg.total_steps - 1:
            entry = {
                "step": step,
                "lr": lr,
                "loss": float(loss.detach()),
                "loss_surf": float(l_surf.detach()),
                "loss_coef": float(l_coef.detach()) if l_coef is not None else None,
            }
            if cfg.val_every and val_data is not None and (
                step % cfg.val_every == 0 or step == cfg.total_steps - 1
            ):
                entry["val_sfe"] = evaluate_sfe(model, val_data, stats, cfg.val_samples)
            history.append(entry)

    return TrainResult(
        history=history, stats=stats, diverged=diverged, wall_time=time.time() - t0
    )


@torch.no_grad()
def predict_flow(
    model: torch.nn.Module,
    mesh: torch.Tensor,
    cond: torch.Tensor,
    stats: FlowStats,
    batch_size: int = 16,
) -> torch.Tensor:
    """Raw-unit flow predictions [N, 3, H, W] for raw mesh coordinates."""
    dtype = next(model.parameters()).dtype
    views = stats.torch_views(dtype)
    out = []
    for i in range(0, mesh.shape[0], batch_size):
        m = (mesh[i : i + batch_size].to(dtype) - views["mesh_mean"]) / views["mesh_std"]
        pred = model(m, cond[i : i + batch_size].to(dtype))
        out.append(pred * views["flow_std"] + views["flow_mean"])
    return torch.cat(out)


def evaluate_sfe(
    model: torch.nn.Module,
    data: TrainingData,
    stats: FlowStats,
    max_samples: int | None = None,
) -> float:
    n = len(data) if max_samples is None else min(len(data), max_samples)
    pred = predict_flow(model, data.mesh[:n], data.cond[:n], stats)
    return field_error(pred.numpy(), data.flow[:n].numpy()).sfe
