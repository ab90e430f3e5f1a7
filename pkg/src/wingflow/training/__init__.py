"""Losses, schedules, and training workflows."""

from .crossval import BudgetReport, budget_report, cross_validate
from .losses import coefficient_loss, surface_loss, total_loss
from .schedule import (
    FINETUNE_SCHEDULE,
    PRETRAIN_SCHEDULE,
    clip_grad_norm,
    one_cycle_lr,
)
from .trainer import (
    TrainConfig,
    TrainResult,
    evaluate_sfe,
    predict_flow,
    select_trainable,
    train,
)

__all__ = [
    "surface_loss",
    "coefficient_loss",
    "total_loss",
    "one_cycle_lr",
    "clip_grad_norm",
    "PRETRAIN_SCHEDULE",
    "FINETUNE_SCHEDULE",
    "TrainConfig",
    "TrainResult",
    "train",
    "predict_flow",
    "evaluate_sfe",
    "select_trainable",
    "cross_validate",
    "budget_report",
    "BudgetReport",
]
