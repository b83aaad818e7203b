import math

import numpy as np
import pytest

from helper.band import NestedPrismatoid, build_band
from helper.errors import (
    ConvexityViolation,
    DegenerateVector,
    DomainError,
    InvalidParameter,
    PreconditionViolation,
)
from helper.geometry import ConvexPolygon
from helper.opening import (
    VertexOpeningConfig,
    check_monotonic,
    check_opening,
    gaussian_arcs,
    open_band_report,
    phi_closed_form,
    phi_derivative_exact,
    phi_derivative_numeric,
    phi_derivative_printed,
    phi_from_geometry,
    reflection_identity,
    safe_arccos,
    spherical_path_length,
)

THETA = 2 * math.pi / 3


def hinge(theta, *vs):
    c = (math.cos(math.pi - theta), math.sin(math.pi - theta))
    return VertexOpeningConfig((-1.0, 0.0), (0.0, 0.0), c, tuple(vs))


def on_circle(degrees, z):
    t = math.radians(degrees)
    return (math.cos(t), math.sin(t), z)


def test_closed_form_reference_value():
    assert phi_closed_form(THETA, 0.0, 1.0, 0.0) == pytest.approx(2.0943951, abs=1e-7)
    assert phi_closed_form(THETA, 0.0, 1.0, 0.0) == pytest.approx(THETA, abs=1e-9)


def test_closed_form_tends_to_straight_angle():
    assert phi_closed_form(THETA, 0.0, 1.0, 1e6) == pytest.approx(math.pi, abs=1e-5)


@pytest.mark.parametrize("x, y, z", [(0.0, 1.0, 0.5), (-0.3, 0.4, 2.0), (0.2, 0.9, 0.05)])
def test_closed_form_matches_geometry(x, y, z):
    cfg = hinge(THETA, (x, y, z))
    assert phi_from_geometry(cfg) == pytest.approx(phi_closed_form(THETA, x, y, z), abs=1e-10)


def test_closed_form_errors():
    with pytest.raises(InvalidParameter):
        phi_closed_form(math.pi, 0.0, 1.0, 1.0)
    with pytest.raises(DegenerateVector):
        phi_closed_form(THETA, 0.0, 0.0, 0.0)


def test_safe_arccos_clamps_rounding_only():
    assert safe_arccos(1.0 + 1e-13) == 0.0
    assert safe_arccos(-1.0 - 1e-13) == pytest.approx(math.pi)
    with pytest.raises(DomainError):
        safe_arccos(1.1)


def test_lifting_opens_the_angle():
    flat = hinge(THETA, (0.0, 1.0, 0.0))
    lifted = hinge(THETA, (0.0, 1.0, 0.5))
    assert not check_opening(flat)
    assert check_opening(lifted)
    assert THETA < phi_from_geometry(lifted) <= math.pi


def test_several_lifted_points_open_the_angle():
    cfg = hinge(THETA, on_circle(150, 0.3), on_circle(100, 0.3))
    assert cfg.k == 2
    assert check_opening(cfg)
    assert spherical_path_length(cfg) == pytest.approx(sum(gaussian_arcs(cfg)))
    assert phi_from_geometry(cfg) >= THETA


def test_config_rejects_bad_lifts():
    with pytest.raises(ConvexityViolation):
        hinge(THETA, (0.0, -1.0, 0.5))
    with pytest.raises(PreconditionViolation):
        hinge(THETA, on_circle(150, 0.3), on_circle(100, 0.4))
    with pytest.raises(ConvexityViolation):
        hinge(THETA, on_circle(100, 0.3), on_circle(150, 0.3))


@pytest.mark.parametrize("x, y, z", [(0.0, 1.0, 0.5), (-0.5, 0.2, 1.5)])
def test_reflection_identity(x, y, z):
    phi, mirrored = reflection_identity(hinge(THETA, (x, y, z)))
    assert phi + mirrored == pytest.approx(2 * math.pi, abs=1e-10)


def test_monotonic_in_height():
    assert check_monotonic(THETA, 0.0, 1.0, np.linspace(0.0, 5.0, 50))
    assert check_monotonic(math.pi / 3, -0.2, 0.7, np.linspace(0.0, 5.0, 50))
    with pytest.raises(PreconditionViolation):
        check_monotonic(THETA, 0.0, 1.0, [0.5, 0.2])
    with pytest.raises(PreconditionViolation):
        check_monotonic(THETA, 0.0, 1.0, [-0.1, 0.2])


def test_derivatives_agree():
    z = 0.7
    exact = phi_derivative_exact(THETA, 0.0, 1.0, z)
    assert exact == pytest.approx(phi_derivative_numeric(THETA, 0.0, 1.0, z), abs=1e-6)
    assert math.copysign(1, phi_derivative_printed(THETA, 0.0, 1.0, z)) == math.copysign(1, exact)
    assert phi_derivative_numeric(THETA, 0.0, 1.0, 0.0) == pytest.approx(0.0, abs=1e-9)


def test_band_report_on_base_side():
    B = ConvexPolygon(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))
    A = ConvexPolygon(((0.5, 0.3), (0.7, 0.5), (0.5, 0.7), (0.3, 0.5)))
    flat = NestedPrismatoid(B, A, 0.0)
    band = build_band(flat)

    report = open_band_report(flat, band, "B")
    for r in report.records:
        assert r.phi == pytest.approx(r.theta, abs=1e-9)

    lifted = open_band_report(flat.with_height(0.4), band, "B")
    assert lifted.min_omega > 0
    assert lifted.max_phi <= math.pi + 1e-9
    assert lifted.by_index(2).theta == pytest.approx(math.pi / 2)

    with pytest.raises(InvalidParameter):
        open_band_report(flat, band, "C")
