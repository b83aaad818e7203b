import numpy as np
import pytest

from helper.band import (
    NestedPrismatoid,
    band_combinatorics,
    build_band,
    edge_lengths_3d,
    face_normal_z,
    hull_validity_margin,
)
from helper.errors import DegenerateHeight, NestingViolation
from helper.generator import random_nested_prismatoid
from helper.geometry import ConvexPolygon

SQUARE = ConvexPolygon(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))
DIAMOND = ConvexPolygon(((0.5, 0.3), (0.7, 0.5), (0.5, 0.7), (0.3, 0.5)))
INNER_SQUARE = ConvexPolygon(((0.3, 0.3), (0.7, 0.3), (0.7, 0.7), (0.3, 0.7)))


def test_nesting_is_enforced():
    outside = ConvexPolygon(((0.5, 0.5), (1.5, 0.5), (0.5, 0.9)))
    with pytest.raises(NestingViolation):
        NestedPrismatoid(SQUARE, outside, 1.0)
    with pytest.raises(DegenerateHeight):
        NestedPrismatoid(SQUARE, DIAMOND, -0.1)


def test_band_uses_every_edge_once():
    band = build_band(NestedPrismatoid(SQUARE, DIAMOND, 0.2))
    assert band.n_triangles == 8
    assert band.n_lateral == 8
    assert sorted(t.base for t in band.triangles if t.kind == "B") == [0, 1, 2, 3]
    assert sorted(t.base for t in band.triangles if t.kind == "A") == [0, 1, 2, 3]
    assert sorted(band.chain_B()) == [0, 1, 2, 3]
    assert sorted(band.chain_A()) == [0, 1, 2, 3]


def test_prismoid_faces_are_coplanar_pairs():
    band = build_band(NestedPrismatoid(SQUARE, INNER_SQUARE, 0.5))
    assert band.coplanar_count() == 8


def test_combinatorics_do_not_depend_on_height():
    p = random_nested_prismatoid(9, 7, 0.3, seed=3)
    reference = band_combinatorics(p)
    for z in (0.0, 0.01, 1.0, 10.0):
        assert band_combinatorics(p.with_height(z)) == reference


def test_band_is_the_hull_surface():
    p = random_nested_prismatoid(11, 6, 0.4, seed=5)
    band = build_band(p)
    assert hull_validity_margin(p, band) <= p.eps
    assert all(face_normal_z(p, band, k) > 0 for k in range(band.n_triangles))


def test_flat_band_has_no_normals():
    p = NestedPrismatoid(SQUARE, DIAMOND, 0.0)
    band = build_band(p)
    assert p.is_flat
    assert face_normal_z(p, band, 0) is None
    assert hull_validity_margin(p, band) == 0.0


def test_lateral_edges_are_longer_than_their_shadows():
    p = NestedPrismatoid(SQUARE, DIAMOND, 0.2)
    band = build_band(p)
    lengths = edge_lengths_3d(p, band)
    for k in range(band.n_lateral):
        b, a = band.lateral_labels(k)
        shadow = float(np.linalg.norm(p.point2(a) - p.point2(b)))
        assert lengths[("L", k)] == pytest.approx(np.hypot(shadow, 0.2))
    assert lengths[("B", 0)] == pytest.approx(1.0)


def test_fans_partition_lateral_edges():
    p = random_nested_prismatoid(8, 10, 0.2, seed=11)
    band = build_band(p)
    assert sum(len(band.lateral_edges_at_b(i)) for i in range(p.B.n)) == band.n_lateral
    assert sum(len(band.lateral_edges_at_a(j)) for j in range(p.A.n)) == band.n_lateral
    for i in range(p.B.n):
        assert len(band.fan_at_b(i)) >= 1
