"""Pseudo-flow oracle, force integration, and error metrics."""

from .integrate import MeshBundle, integrate_coefficients, integrate_torch, integration_sensitivity
from .metrics import FieldError, FlowMetrics, coefficient_error, field_error
from .oracle import oracle_flow
from .types import AeroCoefficients, OperatingCondition, SurfaceFlow

__all__ = [
    "OperatingCondition",
    "SurfaceFlow",
    "AeroCoefficients",
    "oracle_flow",
    "integrate_coefficients",
    "integrate_torch",
    "integration_sensitivity",
    "MeshBundle",
    "field_error",
    "coefficient_error",
    "FieldError",
    "FlowMetrics",
]
