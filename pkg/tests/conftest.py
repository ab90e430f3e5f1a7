import numpy as np
import pytest
import torch

from wingflow.geometry import CstAirfoil, PlanformParams, WingShape, build_surface_mesh
from wingflow.geometry.spanwise import SpanwiseDistribution

torch.manual_seed(0)


def make_wing(
    sweep=37.16,
    ar=8.38,
    tr=0.275,
    kink=0.368,
    kappa=0.67,
    airfoil=None,
    twist=0.0,
    dihedral=0.0,
):
    airfoil = airfoil if airfoil is not None else baseline_airfoil()
    return WingShape(
        planform=PlanformParams(sweep, ar, tr, kink, kappa),
        thickness_dist=SpanwiseDistribution.constant(1.0),
        camber_dist=SpanwiseDistribution.constant(1.0),
        dihedral_dist=SpanwiseDistribution.constant(dihedral),
        twist_dist=SpanwiseDistribution.constant(twist),
        section_airfoils=airfoil,
    )


def baseline_airfoil():
    return CstAirfoil(
        upper=np.array([0.170, 0.150, 0.158, 0.148, 0.155, 0.150, 0.158, 0.170, 0.160, 0.150]),
        lower=np.array([-0.155, -0.140, -0.130, -0.110, -0.090, -0.040, 0.010, 0.050, 0.020, -0.020]),
        te_thickness=0.004,
    )


def flat_plate_wing():
    return make_wing(sweep=0.0, ar=8.0, tr=0.25, kink=0.37, kappa=1e-9,
                     airfoil=CstAirfoil(np.zeros(10), np.zeros(10), 0.0))


@pytest.fixture(scope="session")
def demo_wing():
    """Fixed-planform baseline wing (the detailed design space's center)."""
    return make_wing()


@pytest.fixture(scope="session")
def demo_mesh(demo_wing):
    return build_surface_mesh(demo_wing)


@pytest.fixture(scope="session")
def small_mesh(demo_wing):
    return build_surface_mesh(demo_wing, n_chord=32, n_span=9)


@pytest.fixture(scope="session")
def toy_dataset_dir(tmp_path_factory):
    """4 pretrain-like shapes x 4 conditions at 64x32 resolution."""
    from wingflow.data import DesignSpace, generate_dataset

    path = tmp_path_factory.mktemp("toyds")
    generate_dataset(
        DesignSpace.pretrain_like(), 4, path, seed=11, n_conditions=4, n_chord=64, n_span=33
    )
    return path
