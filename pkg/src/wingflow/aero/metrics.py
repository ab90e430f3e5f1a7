"""Error metrics: range-normalized field MAEs, SFE, and coefficient MAEs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DomainError
from .types import AeroCoefficients, SurfaceFlow

CHANNELS = ("cp", "cf_tau", "cf_z")


@dataclass
class FieldError:
    """Range-normalized per-channel MAEs in percent, averaged over samples."""

    d_cp: float
    d_cf_tau: float
    d_cf_z: float
    sfe: float
    degenerate: bool = False  # some sample had a zero-range truth channel

    def as_dict(self) -> dict:
        return {
            "d_cp": self.d_cp,
            "d_cf_tau": self.d_cf_tau,
            "d_cf_z": self.d_cf_z,
            "sfe": self.sfe,
        }


@dataclass
class FlowMetrics:
    """Full evaluation record: field errors (percent) plus coefficient MAEs."""

    d_cp: float
    d_cf_tau: float
    d_cf_z: float
    sfe: float
    d_cl: float
    d_cd: float
    d_cmz: float

    def as_dict(self) -> dict:
        return {
            "d_cp": self.d_cp,
            "d_cf_tau": self.d_cf_tau,
            "d_cf_z": self.d_cf_z,
            "sfe": self.sfe,
            "d_cl": self.d_cl,
            "d_cd": self.d_cd,
            "d_cmz": self.d_cmz,
        }


def _as_batch(flows) -> np.ndarray:
    if isinstance(flows, SurfaceFlow):
        return flows.stack()[None]
    if isinstance(flows, np.ndarray):
        return flows if flows.ndim == 4 else flows[None]
    return np.stack([f.stack() for f in flows])


def field_error(pred, truth) -> FieldError:
    """Per-sample mean |error| / truth range per channel, in percent.

    Accepts single flows, sequences of flows, or stacked [N, 3, H, W] arrays.
    A zero truth range makes that sample's channel error 0 and flags the
    result as degenerate.
    """
    p = _as_batch(pred)
    t = _as_batch(truth)
    if p.shape != t.shape:
        raise DomainError(f"shape mismatch: {p.shape} vs {t.shape}")
    mae = np.abs(p - t).mean(axis=(2, 3))  # [N, 3]
    rng = t.max(axis=(2, 3)) - t.min(axis=(2, 3))
    degenerate = bool(np.any(rng <= 0.0))
    per_sample = np.where(rng > 0.0, mae / np.where(rng > 0.0, rng, 1.0), 0.0) * 100.0
    d = per_sample.mean(axis=0)
    return FieldError(
        d_cp=float(d[0]),
        d_cf_tau=float(d[1]),
        d_cf_z=float(d[2]),
        sfe=float(d.mean()),
        degenerate=degenerate,
    )


def coefficient_error(
    pred: Sequence[AeroCoefficients], truth: Sequence[AeroCoefficients]
) -> tuple[float, float, float]:
    """Mean absolute (d_cl, d_cd, d_cmz) over paired samples."""
    pred, truth = list(pred), list(truth)
    if len(pred) != len(truth):
        raise DomainError(f"length mismatch: {len(pred)} vs {len(truth)}")
    if not pred:
        raise DomainError("empty coefficient lists")
    p = np.stack([c.as_array() for c in pred])
    t = np.stack([c.as_array() for c in truth])
    d = np.abs(p - t).mean(axis=0)
    return float(d[0]), float(d[1]), float(d[2])
