"""Parametric wing geometry and structured surface meshing."""

from .cst import CstAirfoil, evaluate as cst_evaluate
from .mesh import SurfaceMesh, build_surface_mesh, cell_geometry
from .planform import Planform, PlanformParams, build_planform
from .spanwise import SpanwiseDistribution, evaluate as spanwise_evaluate
from .wing import WingShape

__all__ = [
    "CstAirfoil",
    "cst_evaluate",
    "SpanwiseDistribution",
    "spanwise_evaluate",
    "PlanformParams",
    "Planform",
    "build_planform",
    "WingShape",
    "SurfaceMesh",
    "build_surface_mesh",
    "cell_geometry",
]
