import math

import numpy as np
import pytest
from shapely.geometry import Point

from helper.band import build_band
from helper.constants import NESTING_MARGIN
from helper.errors import InvalidParameter, PreconditionViolation
from helper.generator import (
    GenConfig,
    find_overlap_demo,
    random_convex_polygon,
    random_nested_prismatoid,
    random_nested_prismoid,
    regular_polygon,
    rm_frequency,
    rm_property_threshold,
    spiked_hexagon,
)
from helper.geometry import cross2, overlap_area_threshold
from helper.unfolder import layout_overlaps, unfold
from helper.utils import trial_seed


@pytest.mark.parametrize("n", [3, 5, 12, 30])
def test_random_polygon_is_normalized(n):
    poly = random_convex_polygon(n, seed=1)
    assert poly.n == n
    assert poly.area() > 0
    assert poly.diameter() == pytest.approx(1.0)
    assert np.allclose(poly.centroid(), (0.0, 0.0), atol=1e-12)


def test_random_polygon_is_deterministic():
    assert random_convex_polygon(9, seed=42) == random_convex_polygon(9, seed=42)
    assert random_convex_polygon(9, seed=42) != random_convex_polygon(9, seed=43)


@pytest.mark.parametrize("n", [2, 0, True, 3.5])
def test_vertex_count_is_checked(n):
    with pytest.raises(InvalidParameter):
        random_convex_polygon(n, seed=1)


def test_nested_prismatoid_is_deterministic():
    p = random_nested_prismatoid(14, 16, 0.2, seed=7)
    q = random_nested_prismatoid(14, 16, 0.2, seed=7)
    assert p.B == q.B and p.A == q.A
    assert (p.B.n, p.A.n, p.z) == (14, 16, 0.2)
    assert p.B.to_shapely().contains(p.A.to_shapely())


def test_prismoid_has_trapezoid_faces():
    p = random_nested_prismoid(6, 0.5, seed=2)
    assert p.A.n == 6
    assert build_band(p).coplanar_count() == 12


def test_regular_polygon():
    square = regular_polygon(4)
    assert np.allclose(square.vertex(0), (1.0, 0.0))
    assert np.allclose(square.vertex(1), (0.0, 1.0), atol=1e-12)
    assert all(a == pytest.approx(math.pi / 2) for a in square.interior_angles())


def test_spiked_hexagon():
    assert np.allclose(spiked_hexagon(0.0).array, regular_polygon(6).array)
    assert spiked_hexagon(0.8).vertex(1)[0] == pytest.approx(0.6 * math.cos(math.pi / 3))
    for bad in (-0.1, 1.0, "sharp"):
        with pytest.raises(InvalidParameter):
            spiked_hexagon(bad)


def test_rm_property_is_lost_before_the_tips_turn_acute():
    threshold = rm_property_threshold(iterations=30)
    assert 0.0 < threshold <= 2 * (1 - 2 / (math.sqrt(3) + 1)) + 1e-6
    with pytest.raises(PreconditionViolation):
        rm_property_threshold(lo=0.8, hi=0.9)


def test_rm_frequency_counts():
    hits, total = rm_frequency(count=5, seed=3)
    assert total == 5
    assert 0 <= hits <= 5
    assert rm_frequency(count=5, seed=3) == (hits, total)


@pytest.mark.parametrize("index", range(0, 50, 7))
def test_thin_triangle_prismoids_are_placed(index):
    p = random_nested_prismoid(3, 0.2, seed=trial_seed(7, "unfolder-prismoid", index))
    boundary = p.B.to_shapely()
    clearance = min(boundary.exterior.distance(Point(v)) for v in p.A.vertices)
    assert boundary.contains(p.A.to_shapely())
    assert clearance >= NESTING_MARGIN - 1e-12
    assert build_band(p).coplanar_count() == 6


def test_prismoid_is_a_homothetic_copy():
    p = random_nested_prismoid(7, 0.2, seed=5)
    for i in range(7):
        b0, b1 = p.B.edge(i)
        a0, a1 = p.A.edge(i)
        assert abs(cross2(b1 - b0, a1 - a0)) < 1e-12
        assert np.dot(b1 - b0, a1 - a0) > 0
    assert random_nested_prismoid(7, 0.2, seed=5) == p


def test_spiked_hexagon_overlap_demo_overlaps():
    demo = find_overlap_demo(spiked_hexagon(), seed=7)
    assert demo is not None
    p = demo.prismatoid
    assert p.A == spiked_hexagon()
    again = layout_overlaps(unfold(p, demo.plan), p.eps, involving="A")
    assert again is not None
    assert "A" in (again.face_a, again.face_b)
    assert again.area > overlap_area_threshold(p.eps)


def test_overlap_demo_needs_a_top_without_the_rm_property():
    with pytest.raises(PreconditionViolation):
        find_overlap_demo(regular_polygon(5), budget=1)


def test_gen_config():
    cfg = GenConfig(n_b=8, n_a=5, z=0.3, seed=11)
    assert cfg.to_dict() == {"n_b": 8, "n_a": 5, "z": 0.3, "seed": 11, "prismoid": False}
    assert cfg.generate().B == cfg.generate().B
    assert GenConfig(n_b=6, n_a=0, prismoid=True).generate().A.n == 6
    with pytest.raises(InvalidParameter):
        GenConfig(n_b=8, n_a=2)
