"""Design-space samplers for the two dataset families.

``pretrain_like`` prioritizes breadth: uniform global planform parameters, a
per-wing baseline airfoil perturbed around the shipped fixture, one spanwise
thickness/camber scaler spline, a twist spline, and a two-point dihedral
(kink and tip; the root stays at zero). That draws exactly 37 scalars per
wing. ``finetune_like`` fixes the planform at the detail baseline and samples
richer local parameters: 20 CST coefficients at each of 7 control sections
(each within +-40% of its baseline value), 6 free dihedral offsets within
+-0.05 * c_root (root pinned), and 7 twist angles in [-3, 0] degrees, for 153
scalars per wing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from ..errors import GeometryError
from ..geometry.cst import CstAirfoil
from ..geometry.planform import PlanformParams, build_planform
from ..geometry.spanwise import SpanwiseDistribution
from ..geometry.wing import WingShape
from ..aero.types import OperatingCondition

KINDS = ("pretrain_like", "finetune_like")

MAX_SAMPLE_TRIES = 100

PRETRAIN_RANGES = {
    "sweep_le": (25.0, 40.0),
    "aspect_ratio": (8.0, 11.0),
    "taper_ratio": (0.15, 0.40),
    "kink_eta": (0.36, 0.42),
    "root_adjust": (0.10, 1.10),
    "airfoil_perturb": (0.9, 1.1),
    "section_scale": (0.7, 1.3),
    "twist_deg": (-4.0, 2.0),
    "dihedral_kink": (0.0, 0.05),
    "dihedral_tip": (0.0, 0.15),
    "mach": (0.75, 0.90),
    "aoa_deg": (2.0, 12.0),
}

FINETUNE_RANGES = {
    "cst_perturb": (0.6, 1.4),       # +-40% of each baseline coefficient
    "dihedral_offset": (-0.05, 0.05),  # times c_root, root section pinned
    "twist_deg": (-3.0, 0.0),
    "mach": (0.75, 0.90),
    "aoa_deg": (-2.0, 4.0),
}


def _load_fixture(name: str) -> dict:
    with resources.files("wingflow.fixtures").joinpath(name).open() as fh:
        return json.load(fh)


@dataclass
class DesignSpace:
    """Sampling ranges plus the fixture geometry they perturb."""

    kind: str
    ranges: dict = field(default_factory=dict)
    baseline_airfoil: CstAirfoil = None
    detail: dict = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GeometryError(f"unknown design-space kind {self.kind!r}")

    @classmethod
    def pretrain_like(cls) -> "DesignSpace":
        return cls(
            kind="pretrain_like",
            ranges=dict(PRETRAIN_RANGES),
            baseline_airfoil=CstAirfoil.from_json(_load_fixture("baseline_airfoil.json")),
        )

    @classmethod
    def finetune_like(cls) -> "DesignSpace":
        detail = _load_fixture("detail_baseline.json")
        return cls(
            kind="finetune_like",
            ranges=dict(FINETUNE_RANGES),
            baseline_airfoil=CstAirfoil.from_json(_load_fixture("baseline_airfoil.json")),
            detail=detail,
        )

    @classmethod
    def of_kind(cls, kind: str) -> "DesignSpace":
        return cls.pretrain_like() if kind == "pretrain_like" else cls.finetune_like()

    @property
    def dof(self) -> int:
        """Scalars drawn per wing shape."""
        return 37 if self.kind == "pretrain_like" else 153

    def detail_sections(self) -> list[tuple[float, CstAirfoil]]:
        """Baseline airfoils at the 7 control stations of the detail wing."""
        d = self.detail
        return [
            (eta, self.baseline_airfoil.scaled(ts, cs))
            for eta, ts, cs in zip(
                d["section_etas"], d["section_thickness_scale"], d["section_camber_scale"]
            )
        ]

    def detail_planform(self) -> PlanformParams:
        return PlanformParams.from_json(self.detail["planform"])

    def to_json(self) -> dict:
        return {"kind": self.kind, "ranges": {k: list(v) for k, v in self.ranges.items()}}


def sample_shape(space: DesignSpace, rng: np.random.Generator) -> WingShape:
    """Draw one valid wing; invalid airfoils are resampled up to 100 times."""
    sampler = _sample_pretrain if space.kind == "pretrain_like" else _sample_finetune
    for _ in range(MAX_SAMPLE_TRIES):
        shape = sampler(space, rng)
        if shape is not None:
            return shape
    raise GeometryError(f"no valid shape after {MAX_SAMPLE_TRIES} tries")


def sample_conditions(
    space: DesignSpace, rng: np.random.Generator, n: int = 8
) -> list[OperatingCondition]:
    """n iid operating conditions from the kind's (mach, aoa) box."""
    lo_m, hi_m = space.ranges["mach"]
    lo_a, hi_a = space.ranges["aoa_deg"]
    return [
        OperatingCondition(
            mach=float(rng.uniform(lo_m, hi_m)), aoa_deg=float(rng.uniform(lo_a, hi_a))
        )
        for _ in range(n)
    ]


def _u(rng, lohi, size=None):
    return rng.uniform(lohi[0], lohi[1], size)


def _sample_pretrain(space: DesignSpace, rng) -> WingShape | None:
    r = space.ranges
    planform = PlanformParams(
        sweep_le=float(_u(rng, r["sweep_le"])),
        aspect_ratio=float(_u(rng, r["aspect_ratio"])),
        taper_ratio=float(_u(rng, r["taper_ratio"])),
        kink_eta=float(_u(rng, r["kink_eta"])),
        root_adjust=float(_u(rng, r["root_adjust"])),
    )
    base = space.baseline_airfoil
    airfoil = CstAirfoil(
        upper=base.upper * _u(rng, r["airfoil_perturb"], 10),
        lower=base.lower * _u(rng, r["airfoil_perturb"], 10),
        te_thickness=base.te_thickness,
    )
    scaler = _u(rng, r["section_scale"], 5)
    twist = _u(rng, r["twist_deg"], 5)
    dihedral_kink = float(_u(rng, r["dihedral_kink"]))
    dihedral_tip = float(_u(rng, r["dihedral_tip"]))
    if airfoil.is_self_intersecting():
        return None

    etas5 = np.linspace(0.0, 1.0, 5)
    ek = planform.kink_eta
    # Two sampled dihedral points (kink, tip) with the root pinned to 0,
    # re-expressed on 5 spline controls.
    d_etas = np.array([0.0, ek / 2, ek, (1 + ek) / 2, 1.0])
    d_vals = np.interp(d_etas, [0.0, ek, 1.0], [0.0, dihedral_kink, dihedral_tip])
    scale_dist = SpanwiseDistribution(etas5, scaler, "bspline5")
    return WingShape(
        planform=planform,
        thickness_dist=scale_dist,
        camber_dist=SpanwiseDistribution(etas5, scaler.copy(), "bspline5"),
        dihedral_dist=SpanwiseDistribution(d_etas, d_vals, "bspline5"),
        twist_dist=SpanwiseDistribution(etas5, twist, "bspline5"),
        section_airfoils=airfoil,
    )


def _sample_finetune(space: DesignSpace, rng) -> WingShape | None:
    r = space.ranges
    planform = space.detail_planform()
    c_root = build_planform(planform).c_root
    detail = space.detail
    etas7 = np.asarray(detail["section_etas"], dtype=float)

    sections = []
    for eta, base in space.detail_sections():
        pert = CstAirfoil(
            upper=base.upper * _u(rng, r["cst_perturb"], 10),
            lower=base.lower * _u(rng, r["cst_perturb"], 10),
            te_thickness=base.te_thickness,
        )
        sections.append((eta, pert))
    dihedral = np.asarray(detail["dihedral"], dtype=float).copy()
    dihedral[1:] += _u(rng, r["dihedral_offset"], 6) * c_root
    twist = _u(rng, r["twist_deg"], 7)
    if any(a.is_self_intersecting() for _, a in sections):
        return None

    return WingShape(
        planform=planform,
        thickness_dist=SpanwiseDistribution.constant(1.0),
        camber_dist=SpanwiseDistribution.constant(1.0),
        dihedral_dist=SpanwiseDistribution(etas7, dihedral, "linear7"),
        twist_dist=SpanwiseDistribution(etas7, twist, "linear7"),
        section_airfoils=sections,
    )
