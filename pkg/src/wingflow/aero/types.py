"""Operating conditions, surface flow fields, and aerodynamic coefficients."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True)
class OperatingCondition:
    """Freestream Mach number and angle of attack in degrees."""

    mach: float
    aoa_deg: float

    def __post_init__(self):
        if not 0.0 < self.mach < 1.0:
            raise DomainError(f"mach must be in (0, 1), got {self.mach}")
        if not -10.0 <= self.aoa_deg <= 15.0:
            raise DomainError(f"aoa_deg must be in [-10, 15], got {self.aoa_deg}")

    def to_json(self) -> dict:
        return {"mach": self.mach, "aoa_deg": self.aoa_deg}

    @classmethod
    def from_json(cls, obj: dict) -> "OperatingCondition":
        return cls(mach=float(obj["mach"]), aoa_deg=float(obj["aoa_deg"]))


@dataclass
class SurfaceFlow:
    """Per-cell pressure and friction coefficients, each [H, W].

    cf_tau is the streamwise friction component, cf_z the spanwise one.
    """

    cp: np.ndarray
    cf_tau: np.ndarray
    cf_z: np.ndarray

    def __post_init__(self):
        self.cp = np.asarray(self.cp, dtype=float)
        self.cf_tau = np.asarray(self.cf_tau, dtype=float)
        self.cf_z = np.asarray(self.cf_z, dtype=float)
        if not (self.cp.shape == self.cf_tau.shape == self.cf_z.shape):
            raise DomainError("flow channels must share one [H, W] shape")
        for name in ("cp", "cf_tau", "cf_z"):
            if not np.isfinite(getattr(self, name)).all():
                raise DomainError(f"non-finite values in {name}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.cp.shape

    def stack(self) -> np.ndarray:
        """Channels stacked to [3, H, W] in (cp, cf_tau, cf_z) order."""
        return np.stack([self.cp, self.cf_tau, self.cf_z])

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "SurfaceFlow":
        arr = np.asarray(arr)
        if arr.ndim != 3 or arr.shape[0] != 3:
            raise DomainError(f"expected [3, H, W], got {arr.shape}")
        return cls(cp=arr[0], cf_tau=arr[1], cf_z=arr[2])


@dataclass(frozen=True)
class AeroCoefficients:
    """Lift, drag, and pitching-moment coefficients."""

    cl: float
    cd: float
    cmz: float

    def __post_init__(self):
        if not all(np.isfinite([self.cl, self.cd, self.cmz])):
            raise DomainError("non-finite aerodynamic coefficients")

    def as_array(self) -> np.ndarray:
        return np.array([self.cl, self.cd, self.cmz])

    def to_json(self) -> dict:
        return {"cl": self.cl, "cd": self.cd, "cmz": self.cmz}
