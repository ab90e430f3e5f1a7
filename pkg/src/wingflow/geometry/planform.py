"""Two-segment planform: straight swept leading edge, trailing-edge kink.

All lengths are normalized so the full-wing projected reference area is 1;
the semispan follows from the aspect ratio as b_half = sqrt(AR / 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import radians, sqrt, tan

import numpy as np

from ..errors import GeometryError


@dataclass
class PlanformParams:
    """Global wing-shape scalars (angles in degrees)."""

    sweep_le: float
    aspect_ratio: float
    taper_ratio: float
    kink_eta: float
    root_adjust: float

    def __post_init__(self):
        if not 0.0 <= self.sweep_le < 60.0:
            raise GeometryError(f"sweep_le must be in [0, 60) deg, got {self.sweep_le}")
        if self.aspect_ratio <= 0.0:
            raise GeometryError(f"aspect_ratio must be > 0, got {self.aspect_ratio}")
        if not 0.0 < self.taper_ratio < 1.0:
            raise GeometryError(f"taper_ratio must be in (0, 1), got {self.taper_ratio}")
        if not 0.0 < self.kink_eta < 1.0:
            raise GeometryError(f"kink_eta must be in (0, 1), got {self.kink_eta}")
        if not 0.0 <= self.root_adjust <= 1.2:
            raise GeometryError(f"root_adjust must be in [0, 1.2], got {self.root_adjust}")

    def to_json(self) -> dict:
        return {
            "sweep_le": self.sweep_le,
            "aspect_ratio": self.aspect_ratio,
            "taper_ratio": self.taper_ratio,
            "kink_eta": self.kink_eta,
            "root_adjust": self.root_adjust,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PlanformParams":
        return cls(
            sweep_le=float(obj["sweep_le"]),
            aspect_ratio=float(obj["aspect_ratio"]),
            taper_ratio=float(obj["taper_ratio"]),
            kink_eta=float(obj["kink_eta"]),
            root_adjust=float(obj["root_adjust"]),
        )


@dataclass
class Planform:
    """Resolved planform geometry: chord and LE position versus span fraction."""

    params: PlanformParams
    b_half: float
    c_root: float
    c_kink: float
    c_tip: float

    @property
    def s_ref(self) -> float:
        return 1.0

    def chord(self, eta):
        """Chord length at span fraction eta; piecewise linear with a kink."""
        e = np.asarray(eta, dtype=float)
        ek = self.params.kink_eta
        inner = self.c_root + (self.c_kink - self.c_root) * (e / ek)
        outer = self.c_kink + (self.c_tip - self.c_kink) * (e - ek) / (1.0 - ek)
        c = np.where(e < ek, inner, outer)
        return float(c) if np.isscalar(eta) else c

    def x_le(self, eta):
        """Leading-edge x offset at span fraction eta (straight swept LE)."""
        slope = self.b_half * tan(radians(self.params.sweep_le))
        out = np.asarray(eta, dtype=float) * slope
        return float(out) if np.isscalar(eta) else out

    def mean_aerodynamic_chord(self) -> float:
        """c_mac = (2 / S_ref) * integral of c(eta)^2 * b_half d eta.

        The chord is linear per panel, so each panel integrates exactly to
        (c_a^2 + c_a c_b + c_b^2) / 3 times its span fraction.
        """
        ek = self.params.kink_eta
        inner = ek * (self.c_root**2 + self.c_root * self.c_kink + self.c_kink**2) / 3.0
        outer = (1.0 - ek) * (self.c_kink**2 + self.c_kink * self.c_tip + self.c_tip**2) / 3.0
        return 2.0 * self.b_half * (inner + outer)


def build_planform(params: PlanformParams) -> Planform:
    """Resolve chord lengths from (sweep, AR, TR, kink, root adjust).

    The outer panel lies on a straight taper line c_trap(eta); the root chord
    is c_trap(0) * (1 + root_adjust) and the inner panel runs linearly from it
    to the kink chord. A global chord scale then enforces area 1.
    """
    p = params
    b_half = sqrt(p.aspect_ratio / 2.0)
    # Unscaled taper line a - b*eta with a = 1; TR ties tip to root.
    slope = 1.0 - p.taper_ratio * (1.0 + p.root_adjust)
    c_tip = 1.0 - slope
    c_kink = 1.0 - slope * p.kink_eta
    c_root = 1.0 + p.root_adjust
    if c_tip <= 0.0 or c_kink <= 0.0:
        raise GeometryError("parameters produce a non-positive chord")
    # Projected area of both halves with the unscaled chords.
    integral = p.kink_eta * (c_root + c_kink) / 2.0 + (1.0 - p.kink_eta) * (c_kink + c_tip) / 2.0
    scale = 1.0 / (2.0 * b_half * integral)
    return Planform(
        params=p,
        b_half=b_half,
        c_root=c_root * scale,
        c_kink=c_kink * scale,
        c_tip=c_tip * scale,
    )
