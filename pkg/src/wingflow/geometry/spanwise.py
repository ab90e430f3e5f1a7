"""Spanwise parameter distributions over the normalized semispan [0, 1]."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import make_interp_spline

from ..errors import DomainError, GeometryError

KINDS = ("bspline5", "linear7")
_N_CONTROLS = {"bspline5": 5, "linear7": 7}


@dataclass
class SpanwiseDistribution:
    """Interpolant through control points at fixed span fractions.

    ``bspline5`` is a clamped interpolating cubic B-spline through 5 controls
    (C2 in the interior); ``linear7`` is piecewise linear through 7.
    """

    control_etas: np.ndarray
    control_values: np.ndarray
    kind: str = "bspline5"

    def __post_init__(self):
        self.control_etas = np.asarray(self.control_etas, dtype=float)
        self.control_values = np.asarray(self.control_values, dtype=float)
        if self.kind not in KINDS:
            raise GeometryError(f"unknown distribution kind {self.kind!r}")
        n = _N_CONTROLS[self.kind]
        if self.control_etas.shape != (n,) or self.control_values.shape != (n,):
            raise GeometryError(f"{self.kind} needs exactly {n} controls")
        if np.any(np.diff(self.control_etas) <= 0):
            raise GeometryError("control_etas must be strictly increasing")
        if self.control_etas[0] != 0.0 or self.control_etas[-1] != 1.0:
            raise GeometryError("control_etas must start at 0 and end at 1")
        self._spline = (
            make_interp_spline(self.control_etas, self.control_values, k=3)
            if self.kind == "bspline5"
            else None
        )

    def __call__(self, eta):
        return evaluate(self, eta)

    @classmethod
    def constant(cls, value: float, kind: str = "bspline5") -> "SpanwiseDistribution":
        n = _N_CONTROLS[kind]
        return cls(np.linspace(0.0, 1.0, n), np.full(n, float(value)), kind)

    def to_json(self) -> dict:
        return {
            "control_etas": self.control_etas.tolist(),
            "control_values": self.control_values.tolist(),
            "kind": self.kind,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SpanwiseDistribution":
        return cls(obj["control_etas"], obj["control_values"], obj["kind"])


def evaluate(dist: SpanwiseDistribution, eta):
    """Distribution value at span fraction(s) ``eta`` in [0, 1]."""
    e = np.asarray(eta, dtype=float)
    if np.any(e < 0.0) or np.any(e > 1.0):
        raise DomainError(f"eta outside [0, 1]: {e[(e < 0) | (e > 1)][:4]}")
    if dist.kind == "linear7":
        out = np.interp(e, dist.control_etas, dist.control_values)
    else:
        out = dist._spline(e)
    return float(out) if np.isscalar(eta) else np.asarray(out)
