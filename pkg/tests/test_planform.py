import numpy as np
import pytest

from wingflow.errors import GeometryError
from wingflow.geometry import PlanformParams, build_planform


def quadrature_area(pf, n=200001):
    """Independent oracle: trapezoid quadrature of the projected area."""
    eta = np.linspace(0.0, 1.0, n)
    return 2.0 * pf.b_half * np.trapezoid(pf.chord(eta), eta)


def test_reference_area_is_one():
    pf = build_planform(PlanformParams(35.0, 8.0, 0.25, 0.37, 0.67))
    assert quadrature_area(pf) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("sweep,ar,tr,kink,kappa", [
    (25.0, 8.0, 0.15, 0.36, 0.10),
    (40.0, 11.0, 0.40, 0.42, 1.10),
    (37.16, 8.38, 0.275, 0.368, 0.67),
])
def test_area_and_taper_across_design_space(sweep, ar, tr, kink, kappa):
    pf = build_planform(PlanformParams(sweep, ar, tr, kink, kappa))
    assert quadrature_area(pf) == pytest.approx(1.0, abs=1e-10)
    assert pf.c_tip / pf.c_root == pytest.approx(tr, rel=1e-12)
    assert pf.b_half == pytest.approx(np.sqrt(ar / 2.0), rel=1e-14)


def test_zero_kappa_degenerates_to_single_trapezoid():
    # kappa -> 0: inner panel continues the outer taper line (straight TE)
    pf = build_planform(PlanformParams(30.0, 9.0, 0.3, 0.4, 0.0))
    eta = np.linspace(0, 1, 11)
    c = pf.chord(eta)
    # one global line c = c_root + (c_tip - c_root) * eta
    expected = pf.c_root + (pf.c_tip - pf.c_root) * eta
    np.testing.assert_allclose(c, expected, atol=1e-14)


def test_unswept_leading_edge():
    pf = build_planform(PlanformParams(0.0, 8.0, 0.25, 0.37, 0.67))
    assert np.all(pf.x_le(np.linspace(0, 1, 9)) == 0.0)


def test_swept_leading_edge_is_straight():
    pf = build_planform(PlanformParams(35.0, 8.0, 0.25, 0.37, 0.67))
    eta = np.linspace(0, 1, 9)
    slope = pf.b_half * np.tan(np.radians(35.0))
    np.testing.assert_allclose(pf.x_le(eta), eta * slope, rtol=1e-14)


def test_chord_continuity_at_kink():
    pf = build_planform(PlanformParams(35.0, 8.0, 0.25, 0.37, 0.67))
    ek = 0.37
    eps = 1e-9
    assert pf.chord(ek - eps) == pytest.approx(pf.chord(ek + eps), abs=1e-8)
    # both panel formulas agree exactly at the kink
    inner = pf.c_root + (pf.c_kink - pf.c_root) * (ek / ek)
    outer = pf.c_kink
    assert inner == pytest.approx(outer, abs=1e-12)


def test_parameter_invariants():
    with pytest.raises(GeometryError):
        PlanformParams(60.0, 8.0, 0.25, 0.37, 0.67)       # sweep too large
    with pytest.raises(GeometryError):
        PlanformParams(30.0, -1.0, 0.25, 0.37, 0.67)      # AR <= 0
    with pytest.raises(GeometryError):
        PlanformParams(30.0, 8.0, 1.0, 0.37, 0.67)        # TR not in (0, 1)
    with pytest.raises(GeometryError):
        PlanformParams(30.0, 8.0, 0.25, 0.0, 0.67)        # kink at root
    with pytest.raises(GeometryError):
        PlanformParams(30.0, 8.0, 0.25, 0.37, 1.5)        # kappa > 1.2


def test_mean_aerodynamic_chord_against_quadrature():
    pf = build_planform(PlanformParams(35.0, 8.0, 0.25, 0.37, 0.67))
    # quadrature oracle, panel by panel so the kink lies on a grid point
    expected = 0.0
    for lo, hi in [(0.0, 0.37), (0.37, 1.0)]:
        eta = np.linspace(lo, hi, 200001)
        expected += 2.0 * pf.b_half * np.trapezoid(pf.chord(eta) ** 2, eta)
    assert pf.mean_aerodynamic_chord() == pytest.approx(expected, rel=1e-9)
