"""Surrogate model assembly: configs, networks, and adapters."""

from .config import LoRAConfig, ModelConfig
from .lora import (
    LoRALinear,
    apply_lora,
    attention_parameters,
    lora_parameters,
    merge_lora,
)
from .network import (
    AOA_SCALE,
    MACH_CENTER,
    MACH_SCALE,
    CoefficientModel,
    SurfaceFlowModel,
    build_model,
    normalize_condition,
    param_count,
)

__all__ = [
    "ModelConfig",
    "LoRAConfig",
    "build_model",
    "SurfaceFlowModel",
    "CoefficientModel",
    "param_count",
    "normalize_condition",
    "apply_lora",
    "merge_lora",
    "lora_parameters",
    "attention_parameters",
    "LoRALinear",
    "MACH_CENTER",
    "MACH_SCALE",
    "AOA_SCALE",
]
