"""Deterministic fold assignment for evaluation and cross-validation."""

from __future__ import annotations

import numpy as np

from ..errors import DomainError

GRANULARITIES = ("by_shape", "by_sample")


def split_folds(
    shape_ids: np.ndarray, k: int, seed: int, granularity: str = "by_shape"
) -> np.ndarray:
    """Fold index per sample, [N] ints in [0, k).

    ``by_shape`` keeps every sample of a shape inside one fold so conditions
    of a test shape never leak into training; ``by_sample`` splits samples
    independently.
    """
    shape_ids = np.asarray(shape_ids)
    n = len(shape_ids)
    if k < 2:
        raise DomainError(f"folds must be >= 2, got {k}")
    if granularity not in GRANULARITIES:
        raise DomainError(f"granularity must be one of {GRANULARITIES}")
    rng = np.random.default_rng(seed)
    if granularity == "by_sample":
        if k > n:
            raise DomainError(f"{k} folds > {n} samples")
        perm = rng.permutation(n)
        folds = np.empty(n, dtype=int)
        folds[perm] = np.arange(n) % k
        return folds
    unique = np.unique(shape_ids)
    if k > len(unique):
        raise DomainError(f"{k} folds > {len(unique)} shapes")
    perm = rng.permutation(len(unique))
    fold_of_shape = np.empty(len(unique), dtype=int)
    fold_of_shape[perm] = np.arange(len(unique)) % k
    lookup = dict(zip(unique.tolist(), fold_of_shape.tolist()))
    return np.array([lookup[s] for s in shape_ids.tolist()], dtype=int)
