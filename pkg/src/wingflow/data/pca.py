"""PCA mode analysis of geometry datasets.

Flattened mesh coordinates are standardized per dimension (zero mean, unit
variance) and decomposed; the report gives the smallest mode count whose
cumulative explained variance reaches each requested energy threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError


@dataclass
class ModeAnalysis:
    mode_counts: dict          # threshold -> smallest sufficient mode count
    explained: np.ndarray      # cumulative explained-variance ratios
    singular_values: np.ndarray
    degenerate: bool           # no variance anywhere (identical shapes)

    def to_json(self) -> dict:
        return {
            "mode_counts": {str(k): int(v) for k, v in self.mode_counts.items()},
            "explained": self.explained.tolist(),
            "degenerate": self.degenerate,
        }


def pca_modes(
    points: np.ndarray,
    energy_thresholds: tuple[float, ...] = (0.99, 0.999),
    return_factors: bool = False,
):
    """Analyze [N, ...] stacked geometry samples (flattened per sample).

    Returns a ModeAnalysis, or (ModeAnalysis, standardized data, components)
    when ``return_factors`` is set (components as rows).
    """
    points = np.asarray(points, dtype=float)
    if points.ndim < 2 or points.shape[0] < 2:
        raise DomainError("need at least 2 samples for PCA")
    x = points.reshape(points.shape[0], -1)
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    live = std > 0.0
    if not live.any():
        analysis = ModeAnalysis(
            mode_counts={t: 0 for t in energy_thresholds},
            explained=np.zeros(0),
            singular_values=np.zeros(0),
            degenerate=True,
        )
        return (analysis, np.zeros_like(x), np.zeros((0, x.shape[1]))) if return_factors else analysis

    z = np.zeros_like(x)
    z[:, live] = (x[:, live] - mean[live]) / std[live]
    u, s, vt = np.linalg.svd(z, full_matrices=False)
    var = s**2
    explained = np.cumsum(var) / var.sum()
    counts = {}
    for t in energy_thresholds:
        idx = np.searchsorted(explained, t - 1e-12)
        counts[t] = int(min(idx + 1, len(explained)))
    analysis = ModeAnalysis(
        mode_counts=counts, explained=explained, singular_values=s, degenerate=False
    )
    return (analysis, z, vt) if return_factors else analysis
