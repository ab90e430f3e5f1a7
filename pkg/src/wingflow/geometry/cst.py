"""Class-Shape-Transformation airfoil parameterization.

An airfoil surface is y(x) = C(x) * S(x) +- x * te/2 with the class function
C(x) = x^0.5 (1-x)^1.0 and a Bernstein shape polynomial S built from 10
coefficients per surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import comb

from ..errors import DomainError, GeometryError

N_COEF = 10  # Bernstein degree 9, per surface

CLASS_N1 = 0.5
CLASS_N2 = 1.0

# Dense grid used for self-intersection and thickness/camber queries.
_XDENSE = 0.5 * (1.0 - np.cos(np.linspace(0.0, np.pi, 201)))

_BINOM = comb(N_COEF - 1, np.arange(N_COEF))


def bernstein_matrix(x: np.ndarray) -> np.ndarray:
    """Rows of degree-9 Bernstein basis values at the points ``x``."""
    x = np.asarray(x, dtype=float)[..., None]
    i = np.arange(N_COEF)
    return _BINOM * x**i * (1.0 - x) ** (N_COEF - 1 - i)


@dataclass
class CstAirfoil:
    """CST airfoil: 10 upper + 10 lower coefficients and a TE thickness (chord fraction)."""

    upper: np.ndarray
    lower: np.ndarray
    te_thickness: float = 0.0

    def __post_init__(self):
        self.upper = np.asarray(self.upper, dtype=float)
        self.lower = np.asarray(self.lower, dtype=float)
        if self.upper.shape != (N_COEF,) or self.lower.shape != (N_COEF,):
            raise GeometryError(
                f"expected {N_COEF} coefficients per surface, "
                f"got {self.upper.shape} / {self.lower.shape}"
            )
        if not (np.isfinite(self.upper).all() and np.isfinite(self.lower).all()):
            raise GeometryError("non-finite CST coefficients")
        if self.te_thickness < 0.0:
            raise GeometryError(f"te_thickness must be >= 0, got {self.te_thickness}")

    def is_self_intersecting(self) -> bool:
        """True when the lower surface rises above the upper one anywhere."""
        up = evaluate(self, _XDENSE, "upper")
        lo = evaluate(self, _XDENSE, "lower")
        return bool(np.any(up - lo < -1e-12))

    def thickness_camber(self) -> tuple[float, float]:
        """(max thickness, signed camber at its largest-magnitude station), both y/c."""
        up = evaluate(self, _XDENSE, "upper")
        lo = evaluate(self, _XDENSE, "lower")
        thickness = float(np.max(up - lo))
        camber_line = 0.5 * (up + lo)
        camber = float(camber_line[np.argmax(np.abs(camber_line))])
        return thickness, camber

    def scaled(self, thickness_scale: float, camber_scale: float) -> "CstAirfoil":
        """New airfoil with thickness and camber parts scaled independently.

        CST is linear in its coefficients, so the camber line corresponds to
        (upper+lower)/2 and the thickness envelope to (upper-lower)/2.
        """
        cam = 0.5 * (self.upper + self.lower)
        thk = 0.5 * (self.upper - self.lower)
        return CstAirfoil(
            upper=camber_scale * cam + thickness_scale * thk,
            lower=camber_scale * cam - thickness_scale * thk,
            te_thickness=self.te_thickness * thickness_scale,
        )

    def to_json(self) -> dict:
        return {
            "upper": self.upper.tolist(),
            "lower": self.lower.tolist(),
            "te_thickness": self.te_thickness,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CstAirfoil":
        return cls(
            upper=np.asarray(obj["upper"], dtype=float),
            lower=np.asarray(obj["lower"], dtype=float),
            te_thickness=float(obj.get("te_thickness", 0.0)),
        )


def evaluate(airfoil: CstAirfoil, xbar, surface: str):
    """y/c of one airfoil surface at chord fraction(s) ``xbar`` in [0, 1]."""
    x = np.asarray(xbar, dtype=float)
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise DomainError(f"xbar outside [0, 1]: {x[(x < 0) | (x > 1)][:4]}")
    if surface not in ("upper", "lower"):
        raise DomainError(f"surface must be 'upper' or 'lower', got {surface!r}")
    coef = airfoil.upper if surface == "upper" else airfoil.lower
    sign = 1.0 if surface == "upper" else -1.0
    cls = x**CLASS_N1 * (1.0 - x) ** CLASS_N2
    shape = bernstein_matrix(x) @ coef
    y = cls * shape + sign * x * airfoil.te_thickness / 2.0
    return float(y) if np.isscalar(xbar) else y


def interpolate(a: CstAirfoil, b: CstAirfoil, weight: float) -> CstAirfoil:
    """Linear blend of two airfoils; weight 0 -> a, 1 -> b."""
    w = float(weight)
    return CstAirfoil(
        upper=(1 - w) * a.upper + w * b.upper,
        lower=(1 - w) * a.lower + w * b.lower,
        te_thickness=(1 - w) * a.te_thickness + w * b.te_thickness,
    )
