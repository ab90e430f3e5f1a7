"""K-fold cross-validation driver and the data-vs-training budget ratio."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..data.splits import split_folds
from ..errors import DomainError


def cross_validate(
    shape_ids: np.ndarray,
    folds: int,
    runner: Callable[[np.ndarray, np.ndarray, int], dict],
    seed: int = 0,
    granularity: str = "by_shape",
) -> dict:
    """Run ``runner(train_idx, test_idx, fold)`` per fold; aggregate mean/std.

    The runner returns a flat dict of numeric metrics.
    """
    assignment = split_folds(np.asarray(shape_ids), folds, seed, granularity)
    per_fold = []
    for f in range(folds):
        test_idx = np.flatnonzero(assignment == f)
        train_idx = np.flatnonzero(assignment != f)
        per_fold.append(runner(train_idx, test_idx, f))
    keys = per_fold[0].keys()
    return {
        "folds": per_fold,
        "mean": {k: float(np.mean([m[k] for m in per_fold])) for k in keys},
        "std": {k: float(np.std([m[k] for m in per_fold])) for k in keys},
    }


@dataclass
class BudgetReport:
    """gamma = cost of generating 10 samples / cost of 1k training steps."""

    gamma: float
    sample_gen_time: float
    train_time: float

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "sample_gen_time_per_10": self.sample_gen_time,
            "train_time_per_1k_steps": self.train_time,
        }


def budget_report(sample_gen_time_per_10: float, train_time_per_1k_steps: float) -> BudgetReport:
    if sample_gen_time_per_10 <= 0 or train_time_per_1k_steps <= 0:
        raise DomainError("times must be positive")
    return BudgetReport(
        gamma=sample_gen_time_per_10 / train_time_per_1k_steps,
        sample_gen_time=sample_gen_time_per_10,
        train_time=train_time_per_1k_steps,
    )
