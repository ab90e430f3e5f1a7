"""Training losses: per-cell surface MSE plus an integrated-coefficient term.

The coefficient term compares lift/drag integrated from the *predicted*
surface flow against the same integration of the *ground-truth* surface flow,
so any bias in how reference coefficients were produced upstream drops out.
"""

from __future__ import annotations

import torch

from ..aero.integrate import MeshBundle, integrate_torch


def surface_loss(pred: torch.Tensor, truth: torch.Tensor) -> torch.Tensor:
    """Mean over cells of (dCp)^2 + |dCf|^2 for flows [..., 3, H, W]."""
    sq = (pred - truth) ** 2
    return sq.sum(dim=-3).mean()


def coefficient_loss(
    pred: torch.Tensor,
    truth: torch.Tensor,
    geom: MeshBundle,
    aoa_deg: torch.Tensor,
    scales: tuple[float, float] = (1.0, 1.0),
) -> torch.Tensor:
    """MSE(cl_hat; cl) + MSE(cd_hat; cd), both sides integrated from flows.

    ``scales`` optionally divides the lift/drag errors (the trainer passes
    the training split's coefficient spread so this term lives in the same
    standardized units as the surface loss; the default keeps raw MSE).
    """
    cl_p, cd_p, _ = integrate_torch(geom, pred, aoa_deg)
    cl_t, cd_t, _ = integrate_torch(geom, truth, aoa_deg)
    return (((cl_p - cl_t) / scales[0]) ** 2).mean() + (((cd_p - cd_t) / scales[1]) ** 2).mean()


def total_loss(
    pred: torch.Tensor,
    truth: torch.Tensor,
    geom: MeshBundle,
    aoa_deg: torch.Tensor,
    lambda_coef: float,
) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor | None]:
    """(total, surface term, coefficient term); the coefficient branch is
    skipped entirely at lambda == 0 so that run is bitwise identical to pure
    surface-loss training."""
    l_surf = surface_loss(pred, truth)
    if lambda_coef == 0.0:
        return l_surf, l_surf, None
    l_coef = coefficient_loss(pred, truth, geom, aoa_deg)
    return l_surf + lambda_coef * l_coef, l_surf, l_coef
