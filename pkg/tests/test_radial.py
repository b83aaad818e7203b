import math

import numpy as np
import pytest

from helper.errors import ConvexityViolation, DegenerateSegment, InvalidOpening
from helper.generator import regular_polygon, spiked_hexagon
from helper.geometry import ConvexPolygon, PolyChain
from helper.radial import (
    RmWitness,
    acute_vertices,
    boundary_paths,
    check_noncrossing,
    curl_sign,
    find_crossing_opening,
    find_rm_property,
    involute_of,
    is_rm,
    is_rm_from,
    open_chain,
    rm_margin,
    verify_witness,
)


def arc(start, stop, step):
    return PolyChain(tuple((math.cos(math.radians(d)), math.sin(math.radians(d))) for d in range(start, stop + 1, step)))


SHORT_ARC = arc(0, 80, 20)
LONG_ARC = PolyChain(tuple((math.cos(-math.radians(d)), math.sin(-math.radians(d))) for d in range(0, 271, 15)))


def test_acute_joint_breaks_rm():
    chain = PolyChain(((0.0, 0.0), (1.0, 0.0), (0.2, 0.5)))
    assert acute_vertices(chain) == [1]
    assert not is_rm(chain)
    assert rm_margin(chain) < 0


def test_short_convex_arc_is_rm():
    assert acute_vertices(SHORT_ARC) == []
    assert is_rm(SHORT_ARC)
    assert is_rm_from(SHORT_ARC)
    assert rm_margin(SHORT_ARC) > 0


def test_obtuse_long_arc_is_not_rm():
    assert acute_vertices(LONG_ARC) == []
    assert not is_rm(LONG_ARC)
    assert find_crossing_opening(LONG_ARC) is not None


def test_rm_from_an_external_centre():
    chain = PolyChain(((1.0, 0.0), (2.0, 0.0), (3.0, 0.5)))
    assert is_rm_from(chain, v=(0.0, 0.0))
    assert not is_rm_from(chain, v=(5.0, 0.0))


@pytest.mark.parametrize("n", range(3, 9))
def test_regular_polygons_have_the_rm_property(n):
    assert find_rm_property(regular_polygon(n))


def test_spiked_hexagon_lacks_the_rm_property():
    assert find_rm_property(spiked_hexagon()) == []


def test_boundary_paths_of_square():
    square = ConvexPolygon(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))
    right, left = boundary_paths(square, 0, 2)
    assert right.vertices == ((0.0, 0.0), (0.0, 1.0), (1.0, 1.0))
    assert left.vertices == ((1.0, 0.0), (1.0, 1.0))
    assert verify_witness(square, RmWitness(0, 2, 4))
    assert not verify_witness(square, RmWitness(0, 1, 4))


def test_open_chain_keeps_lengths_and_adds_omega():
    omegas = [0.1, 0.05, 0.2]
    opened = open_chain(SHORT_ARC, omegas)
    assert np.allclose(opened.segment_lengths(), SHORT_ARC.segment_lengths())
    assert np.allclose(opened.angles(), np.add(SHORT_ARC.angles(), omegas))
    assert np.allclose(opened.vertices[:2], SHORT_ARC.vertices[:2])
    assert check_noncrossing(SHORT_ARC, omegas)
    assert is_rm(opened)


@pytest.mark.parametrize("omegas", [[0.1, 0.1], [0.1, -0.1, 0.1], [0.5, 0.0, 0.0]])
def test_open_chain_rejects_bad_openings(omegas):
    with pytest.raises(InvalidOpening):
        open_chain(SHORT_ARC, omegas)


def test_curl_sign():
    assert curl_sign(SHORT_ARC) == 1
    assert curl_sign(LONG_ARC) == -1
    with pytest.raises(ConvexityViolation):
        curl_sign(PolyChain(((0.0, 0.0), (1.0, 0.0), (2.0, 1.0), (3.0, 0.0))))


def test_involute_starts_at_the_chain_end():
    inv = involute_of(SHORT_ARC)
    assert len(inv.arcs) == SHORT_ARC.n - 2
    assert np.allclose(inv.junctions()[0], SHORT_ARC.array[-1])
    radii = inv.radii()
    assert all(r1 > r2 for r1, r2 in zip(radii, radii[1:]))
    with pytest.raises(DegenerateSegment):
        involute_of(PolyChain(((0.0, 0.0), (1.0, 0.0))))
