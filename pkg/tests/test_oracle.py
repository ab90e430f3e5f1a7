import numpy as np
import pytest

from conftest import make_wing
from wingflow.aero import OperatingCondition, oracle_flow
from wingflow.aero.oracle import point_values
from wingflow.geometry import build_surface_mesh

# Frozen hand evaluation of the pseudo-flow formulas at
# Ma=0.85, alpha_eff=0.02 rad, sweep=35 deg, t=0.1, m=0.02, xbar=0.5, c=0.25.
GOLDEN = {
    "beta": 0.7177710102975754,
    "x_shock": 0.465,
    "cp_upper": -0.7226889023116805,
    "cp_lower": -0.4745122644061598,
    "cf_upper": 0.0015010591914393085,   # halved aft of the shock
    "cf_lower": 0.003002118382878617,
    "cfz_upper": 0.00010510529611447757,
    "cfz_lower": 0.00021021059222895515,
}
# twist carrying the whole effective incidence: alpha=0, theta = 0.02 rad
GOLDEN_TWIST = np.degrees(0.02)


def eval_point(side):
    cp, cf, cfz = point_values(
        xbar=0.5,
        upper=np.array(side == "upper"),
        te=np.array(False),
        thickness=0.1,
        camber=0.02,
        twist_deg=GOLDEN_TWIST,
        chord=0.25,
        mach=0.85,
        aoa_deg=0.0,
        sweep_deg=35.0,
    )
    return float(cp), float(cf), float(cfz)


def test_golden_point_values_upper():
    cp, cf, cfz = eval_point("upper")
    assert cp == pytest.approx(GOLDEN["cp_upper"], abs=1e-12)
    assert cf == pytest.approx(GOLDEN["cf_upper"], abs=1e-15)
    assert cfz == pytest.approx(GOLDEN["cfz_upper"], abs=1e-15)


def test_golden_point_values_lower():
    cp, cf, cfz = eval_point("lower")
    assert cp == pytest.approx(GOLDEN["cp_lower"], abs=1e-12)
    assert cf == pytest.approx(GOLDEN["cf_lower"], abs=1e-15)
    assert cfz == pytest.approx(GOLDEN["cfz_lower"], abs=1e-15)


def test_zero_incidence_zero_camber_kills_loading():
    # only thickness (and shock) terms remain; upper/lower pressure agree
    # below the shock switch-on
    cp_u, _, _ = point_values(0.3, np.array(True), np.array(False),
                              0.1, 0.0, 0.0, 1.0, mach=0.7, aoa_deg=0.0, sweep_deg=20.0)
    cp_l, _, _ = point_values(0.3, np.array(False), np.array(False),
                              0.1, 0.0, 0.0, 1.0, mach=0.7, aoa_deg=0.0, sweep_deg=20.0)
    assert float(cp_u) == pytest.approx(float(cp_l), abs=1e-14)


def test_subcritical_mach_has_no_shock_jump():
    # Ma <= 0.72 -> shock amplitude 0: Cp equals loading + thickness terms
    beta = np.sqrt(1.0 - (0.70 * np.cos(np.radians(30.0))) ** 2)
    for xb in (0.2, 0.5, 0.8):
        cp, _, _ = point_values(xb, np.array(True), np.array(False),
                                0.08, 0.01, 1.0, 1.0, mach=0.70, aoa_deg=2.0, sweep_deg=30.0)
        alpha_eff = np.radians(3.0)
        expected = (
            -(2 * alpha_eff + 8 * 0.01) * np.sqrt((1 - xb) / (xb + 0.01)) / beta
            - 4 * 0.08 * np.sin(np.pi * xb) / beta
        )
        assert float(cp) == pytest.approx(expected, abs=1e-14)


def test_te_cell_pressure_constant(demo_wing, demo_mesh):
    flow = oracle_flow(demo_mesh, demo_wing, OperatingCondition(0.85, 2.0))
    assert np.all(flow.cp[-1, :] == 0.2)
    assert np.all(flow.cf_z[-1, :] == 0.0)  # (1 - xbar) factor at the TE


def test_oracle_determinism(demo_wing, small_mesh):
    oc = OperatingCondition(0.82, 4.0)
    a = oracle_flow(small_mesh, demo_wing, oc)
    b = oracle_flow(small_mesh, demo_wing, oc)
    assert np.array_equal(a.cp, b.cp)
    assert np.array_equal(a.cf_tau, b.cf_tau)
    assert np.array_equal(a.cf_z, b.cf_z)


def test_oracle_sensitive_to_condition_and_twist():
    wing_a = make_wing(twist=0.0)
    wing_b = make_wing(twist=-3.0)
    mesh_a = build_surface_mesh(wing_a, 32, 9)
    mesh_b = build_surface_mesh(wing_b, 32, 9)
    base = oracle_flow(mesh_a, wing_a, OperatingCondition(0.85, 2.0))
    hot = oracle_flow(mesh_a, wing_a, OperatingCondition(0.88, 6.0))
    twisted = oracle_flow(mesh_b, wing_b, OperatingCondition(0.85, 2.0))
    assert np.abs(base.cp - hot.cp).max() > 0.05
    assert np.abs(base.cp - twisted.cp).max() > 0.01


def test_friction_halved_behind_shock():
    x_shock = 0.15 + 2.5 * (0.85 - 0.72)  # alpha_eff = 0 -> 0.475
    before, after = 0.4, 0.6
    _, cf_b, _ = point_values(before, np.array(True), np.array(False),
                              0.1, 0.0, 0.0, 1.0, 0.85, 0.0, 0.0)
    _, cf_a, _ = point_values(after, np.array(True), np.array(False),
                              0.1, 0.0, 0.0, 1.0, 0.85, 0.0, 0.0)
    _, cf_a_lower, _ = point_values(after, np.array(False), np.array(False),
                                    0.1, 0.0, 0.0, 1.0, 0.85, 0.0, 0.0)
    ratio_free = (1.0 * (before + 0.02)) ** -0.2 / (1.0 * (after + 0.02)) ** -0.2
    assert float(cf_b) / float(cf_a) == pytest.approx(2.0 * ratio_free, rel=1e-12)
    assert float(cf_a_lower) == pytest.approx(2.0 * float(cf_a), rel=1e-12)
