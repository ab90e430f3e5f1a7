import numpy as np
import pytest
from scipy.interpolate import make_interp_spline

from wingflow.errors import DomainError, GeometryError
from wingflow.geometry import SpanwiseDistribution, spanwise_evaluate


def test_constant_reproduction():
    for kind in ("bspline5", "linear7"):
        dist = SpanwiseDistribution.constant(2.5, kind)
        for eta in (0.0, 0.123, 0.5, 1.0):
            assert spanwise_evaluate(dist, eta) == pytest.approx(2.5, abs=1e-12)


def test_linear7_linearity():
    etas = np.linspace(0, 1, 7)
    dist = SpanwiseDistribution(etas, 1.0 + 2.0 * etas, "linear7")
    assert spanwise_evaluate(dist, 0.5) == pytest.approx(2.0, abs=1e-12)
    assert spanwise_evaluate(dist, 0.25) == pytest.approx(1.5, abs=1e-12)


def test_bspline_interpolates_controls():
    # oracle: direct spline solve through the same controls
    etas = np.array([0.0, 0.2, 0.5, 0.8, 1.0])
    vals = np.array([0.0, 1.0, -0.5, 2.0, 0.3])
    dist = SpanwiseDistribution(etas, vals, "bspline5")
    direct = make_interp_spline(etas, vals, k=3)
    assert spanwise_evaluate(dist, float(etas[2])) == pytest.approx(vals[2], abs=1e-9)
    for eta in etas:
        assert spanwise_evaluate(dist, float(eta)) == pytest.approx(
            float(direct(eta)), abs=1e-12
        )
    # C2 interior: second derivative continuous across the middle knot
    h = 1e-6
    d2 = lambda e: (dist(e + h) - 2 * dist(e) + dist(e - h)) / h**2
    assert d2(0.5 - 5 * h) == pytest.approx(d2(0.5 + 5 * h), abs=1e-2)


def test_control_count_enforced():
    with pytest.raises(GeometryError):
        SpanwiseDistribution(np.linspace(0, 1, 4), np.zeros(4), "bspline5")
    with pytest.raises(GeometryError):
        SpanwiseDistribution(np.linspace(0, 1, 5), np.zeros(5), "linear7")


def test_knot_validation():
    with pytest.raises(GeometryError):
        SpanwiseDistribution([0.0, 0.5, 0.4, 0.8, 1.0], np.zeros(5), "bspline5")
    with pytest.raises(GeometryError):
        SpanwiseDistribution([0.1, 0.3, 0.5, 0.8, 1.0], np.zeros(5), "bspline5")


def test_out_of_range_eta():
    dist = SpanwiseDistribution.constant(1.0)
    with pytest.raises(DomainError):
        spanwise_evaluate(dist, -0.1)
    with pytest.raises(DomainError):
        spanwise_evaluate(dist, 1.1)


def test_json_roundtrip():
    dist = SpanwiseDistribution(np.linspace(0, 1, 7), np.arange(7.0), "linear7")
    clone = SpanwiseDistribution.from_json(dist.to_json())
    assert clone.kind == dist.kind
    np.testing.assert_array_equal(clone.control_values, dist.control_values)
