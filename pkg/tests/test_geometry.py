import math

import numpy as np
import pytest

from helper.errors import (
    ConvexityViolation,
    DegenerateInput,
    DegenerateSegment,
    DegenerateTriangle,
    IndexOutOfRange,
    InvalidParameter,
)
from helper.geometry import (
    ConvexPolygon,
    Point2,
    PolyChain,
    RigidMotion2,
    angle_at,
    convex_hull_2d,
    diameter,
    orientation,
    point_strictly_inside,
    segments_intersect,
    set_tolerance,
    signed_area,
    triangles_overlap,
)

SQUARE = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))


@pytest.mark.parametrize(
    "r, expected",
    [((0.0, 1.0), 1), ((0.0, -1.0), -1), ((2.0, 0.0), 0), ((0.5, 1e-12), 0)],
)
def test_orientation(r, expected):
    assert orientation((0.0, 0.0), (1.0, 0.0), r) == expected


def test_orientation_swaps_sign():
    p, q, r = (0.1, 0.2), (0.9, -0.3), (0.4, 0.8)
    assert orientation(p, q, r) == -orientation(q, p, r)


@pytest.mark.parametrize(
    "q1, q2, expected",
    [
        ((0.5, -1.0), (0.5, 1.0), True),
        ((1.0, 0.0), (2.0, 1.0), True),  # touching at an endpoint counts
        ((0.0, 1.0), (1.0, 1.0), False),
        ((2.0, 0.0), (3.0, 0.0), False),
    ],
)
def test_segments_intersect(q1, q2, expected):
    assert segments_intersect((0.0, 0.0), (1.0, 0.0), q1, q2) is expected


def test_signed_area_and_diameter():
    assert signed_area(SQUARE) == pytest.approx(1.0)
    assert signed_area(SQUARE[::-1]) == pytest.approx(-1.0)
    assert diameter(SQUARE) == pytest.approx(math.sqrt(2))


def test_angle_at_sides():
    chain = PolyChain(((1.0, 0.0), (0.0, 0.0), (0.0, 1.0)))
    assert angle_at(chain, 1) == pytest.approx(math.pi / 2)
    left = angle_at(chain, 1, side="left")
    right = angle_at(chain, 1, side="right")
    assert left + right == pytest.approx(2 * math.pi)
    assert min(left, right) == pytest.approx(math.pi / 2)


def test_angle_at_errors():
    chain = PolyChain(((1.0, 0.0), (0.0, 0.0), (0.0, 1.0)))
    with pytest.raises(IndexOutOfRange):
        angle_at(chain, 0)
    with pytest.raises(IndexOutOfRange):
        angle_at(chain, 2)
    with pytest.raises(InvalidParameter):
        angle_at(chain, 1, side="inside")


def test_chain_rejects_repeated_vertex():
    with pytest.raises(DegenerateSegment):
        PolyChain(((0.0, 0.0), (0.0, 0.0), (1.0, 0.0)))


def test_polygon_validation():
    poly = ConvexPolygon(SQUARE)
    assert poly.n == 4
    assert poly.area() == pytest.approx(1.0)
    assert np.allclose(poly.centroid(), (0.5, 0.5))
    with pytest.raises(ConvexityViolation):
        ConvexPolygon(SQUARE[::-1])
    with pytest.raises(ConvexityViolation):
        ConvexPolygon(((0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (0.0, 1.0)))
    with pytest.raises(DegenerateInput):
        ConvexPolygon(((0.0, 0.0), (1.0, 0.0)))


def test_point_strictly_inside():
    poly = ConvexPolygon(SQUARE)
    assert point_strictly_inside(poly, (0.5, 0.5))
    assert not point_strictly_inside(poly, (1.0, 0.5))
    assert not point_strictly_inside(poly, (1.5, 0.5))


def test_point_rejects_nan():
    with pytest.raises(DegenerateInput):
        Point2(float("nan"), 0.0)


def test_triangles_overlap():
    t1 = ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))
    shared_edge = ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0))
    inner = ((0.1, 0.1), (0.3, 0.1), (0.1, 0.3))
    assert not triangles_overlap(t1, shared_edge)
    assert not triangles_overlap(shared_edge, t1)
    assert triangles_overlap(t1, inner)
    with pytest.raises(DegenerateTriangle):
        triangles_overlap(t1, ((0.0, 0.0), (1.0, 0.0), (2.0, 0.0)))


def test_convex_hull_drops_interior_and_collinear_points():
    hull = convex_hull_2d([(0, 0), (1, 0), (0.5, 0.0), (1, 1), (0, 1), (0.5, 0.5)])
    assert set(hull.vertices) == set(SQUARE)
    with pytest.raises(DegenerateInput):
        convex_hull_2d([(0, 0), (1, 1), (2, 2)])


def test_rigid_motion_from_segment_pair():
    m = RigidMotion2.from_segment_pair((0, 0), (1, 0), (2, 3), (2, 5))
    assert np.allclose(m.apply((0, 0)), (2, 3))
    assert np.allclose(m.apply((1, 0)), (2, 4))
    back = m.inverse().compose(m)
    assert np.allclose(back.apply((0.3, -0.7)), (0.3, -0.7))


def test_rigid_motion_mirror():
    m = RigidMotion2.from_segment_pair((0, 0), (1, 0), (0, 0), (1, 0), reflect=True)
    assert np.allclose(m.apply((0.5, 1.0)), (0.5, -1.0))
    assert np.linalg.det(m.matrix()[:2, :2]) == pytest.approx(-1.0)


def test_set_tolerance_rejects_nonpositive():
    with pytest.raises(InvalidParameter):
        set_tolerance(0.0)
    with pytest.raises(InvalidParameter):
        set_tolerance(float("inf"))
