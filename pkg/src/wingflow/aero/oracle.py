"""Deterministic analytic pseudo-flow generator (stand-in for a RANS solver).

Closed-form surface pressure and friction fields built from thin-airfoil-style
loading, a thickness term, a sigmoid shock jump on the upper surface at high
Mach, and a turbulent flat-plate friction law with sweep-induced crossflow.
Not physical truth: a smooth, geometry- and condition-sensitive target that a
surrogate can be trained and scored against.
"""

from __future__ import annotations

from math import cos, radians, tan

import numpy as np

from ..geometry.mesh import SurfaceMesh
from ..geometry.wing import WingShape
from .types import OperatingCondition, SurfaceFlow

REYNOLDS = 2.0e7
SHOCK_MACH = 0.72
TE_CP = 0.2


def point_values(
    xbar,
    upper: np.ndarray,
    te: np.ndarray,
    thickness,
    camber,
    twist_deg,
    chord,
    mach: float,
    aoa_deg: float,
    sweep_deg: float,
):
    """(cp, cf_tau, cf_z) arrays for broadcastable cell inputs.

    ``xbar`` indexes the chordwise direction, the spanwise quantities
    (thickness, camber, twist, chord) broadcast against it; ``upper`` and
    ``te`` are boolean masks of the same broadcast shape.
    """
    beta = np.sqrt(max(1.0 - (mach * cos(radians(sweep_deg))) ** 2, 0.04))
    alpha_eff = np.radians(aoa_deg + twist_deg)
    lift_shape = np.sqrt((1.0 - xbar) / (xbar + 0.01))
    loading = 2.0 * alpha_eff + 8.0 * camber
    thick_term = 4.0 * thickness * np.sin(np.pi * xbar) / beta

    shock_amp = 0.8 * max(mach - SHOCK_MACH, 0.0) / beta
    x_shock = np.clip(0.15 + 2.5 * (mach - SHOCK_MACH) - 0.5 * alpha_eff, 0.05, 0.85)
    shock = shock_amp / (1.0 + np.exp(-(xbar - x_shock) / 0.03))

    cp_upper = -loading * lift_shape / beta - thick_term + shock
    cp_lower = 0.3 * loading * lift_shape / beta - thick_term
    cp = np.where(upper, cp_upper, cp_lower)
    cp = np.where(te, TE_CP, cp)

    cf = 0.0576 * (REYNOLDS * chord * (xbar + 0.02)) ** (-0.2)
    cf = np.where(upper & (xbar > x_shock), 0.5 * cf, cf)
    cf_tau = cf
    cf_z = 0.2 * cf * tan(radians(sweep_deg)) * (1.0 - xbar)
    return cp, cf_tau, cf_z


def oracle_flow(mesh: SurfaceMesh, shape: WingShape, oc: OperatingCondition) -> SurfaceFlow:
    """Evaluate the pseudo-flow on every cell of ``mesh``."""
    thickness, camber = shape.section_thickness_camber(mesh.eta)
    h, w = mesh.shape
    xbar = mesh.xbar[:, None]
    upper = np.broadcast_to((~mesh.lower_mask & ~mesh.te_mask)[:, None], (h, w))
    te = np.broadcast_to(mesh.te_mask[:, None], (h, w))
    cp, cf_tau, cf_z = point_values(
        xbar=np.broadcast_to(xbar, (h, w)),
        upper=upper,
        te=te,
        thickness=thickness[None, :],
        camber=camber[None, :],
        twist_deg=mesh.twist_deg[None, :],
        chord=mesh.chord[None, :],
        mach=oc.mach,
        aoa_deg=oc.aoa_deg,
        sweep_deg=shape.planform.sweep_le,
    )
    return SurfaceFlow(cp=cp, cf_tau=cf_tau, cf_z=cf_z)
