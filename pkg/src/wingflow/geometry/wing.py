"""Full parametric wing: planform + spanwise distributions + sectional airfoils."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import GeometryError
from . import cst
from .cst import CstAirfoil
from .planform import Planform, PlanformParams, build_planform
from .spanwise import SpanwiseDistribution


@dataclass
class WingShape:
    """Parametric wing.

    ``section_airfoils`` is either a single baseline airfoil (modulated along
    the span by the thickness/camber distributions) or a list of
    ``(eta, airfoil)`` control sections interpolated linearly in between.
    The thickness/camber distributions act as multiplicative scalers in both
    cases, so a constant value of 1 leaves the sections untouched.
    """

    planform: PlanformParams
    thickness_dist: SpanwiseDistribution
    camber_dist: SpanwiseDistribution
    dihedral_dist: SpanwiseDistribution
    twist_dist: SpanwiseDistribution
    section_airfoils: CstAirfoil | list[tuple[float, CstAirfoil]]

    _resolved: Planform = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._resolved = build_planform(self.planform)
        if isinstance(self.section_airfoils, list):
            etas = [e for e, _ in self.section_airfoils]
            if len(etas) < 2 or etas[0] != 0.0 or etas[-1] != 1.0 or np.any(np.diff(etas) <= 0):
                raise GeometryError("section etas must increase from 0 to 1")

    @property
    def resolved_planform(self) -> Planform:
        return self._resolved

    @property
    def b_half(self) -> float:
        return self._resolved.b_half

    def base_airfoil_at(self, eta: float) -> CstAirfoil:
        """Sectional airfoil before thickness/camber scaling."""
        if isinstance(self.section_airfoils, CstAirfoil):
            return self.section_airfoils
        sections = self.section_airfoils
        etas = np.array([e for e, _ in sections])
        i = int(np.clip(np.searchsorted(etas, eta) - 1, 0, len(sections) - 2))
        e0, a0 = sections[i]
        e1, a1 = sections[i + 1]
        w = 0.0 if e1 == e0 else (eta - e0) / (e1 - e0)
        return cst.interpolate(a0, a1, float(np.clip(w, 0.0, 1.0)))

    def airfoil_at(self, eta: float) -> CstAirfoil:
        """Sectional airfoil after applying the spanwise scalers."""
        base = self.base_airfoil_at(eta)
        return base.scaled(float(self.thickness_dist(eta)), float(self.camber_dist(eta)))

    def section_frame(self, eta):
        """(chord, x_le, y_le, twist_deg, z) for span fraction(s) eta."""
        pf = self._resolved
        e = np.asarray(eta, dtype=float)
        return (
            pf.chord(e),
            pf.x_le(e),
            np.asarray(self.dihedral_dist(e)),
            np.asarray(self.twist_dist(e)),
            e * pf.b_half,
        )

    def section_thickness_camber(self, etas) -> tuple[np.ndarray, np.ndarray]:
        """Max thickness and signed camber (y/c) of the scaled section at each eta."""
        t = np.empty(len(etas))
        m = np.empty(len(etas))
        for i, e in enumerate(etas):
            t[i], m[i] = self.airfoil_at(float(e)).thickness_camber()
        return t, m

    def validate_sections(self, n_check: int = 9) -> None:
        """Raise when any checked section self-intersects."""
        for e in np.linspace(0.0, 1.0, n_check):
            if self.airfoil_at(float(e)).is_self_intersecting():
                raise GeometryError(f"self-intersecting airfoil near eta={e:.3f}")

    def to_json(self) -> dict:
        if isinstance(self.section_airfoils, CstAirfoil):
            sections = self.section_airfoils.to_json()
        else:
            sections = [{"eta": e, "airfoil": a.to_json()} for e, a in self.section_airfoils]
        return {
            "planform": self.planform.to_json(),
            "thickness_dist": self.thickness_dist.to_json(),
            "camber_dist": self.camber_dist.to_json(),
            "dihedral_dist": self.dihedral_dist.to_json(),
            "twist_dist": self.twist_dist.to_json(),
            "section_airfoils": sections,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "WingShape":
        raw = obj["section_airfoils"]
        if isinstance(raw, dict):
            sections: CstAirfoil | list = CstAirfoil.from_json(raw)
        else:
            sections = [(float(s["eta"]), CstAirfoil.from_json(s["airfoil"])) for s in raw]
        return cls(
            planform=PlanformParams.from_json(obj["planform"]),
            thickness_dist=SpanwiseDistribution.from_json(obj["thickness_dist"]),
            camber_dist=SpanwiseDistribution.from_json(obj["camber_dist"]),
            dihedral_dist=SpanwiseDistribution.from_json(obj["dihedral_dist"]),
            twist_dist=SpanwiseDistribution.from_json(obj["twist_dist"]),
            section_airfoils=sections,
        )
