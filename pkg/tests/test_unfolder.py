import numpy as np
import pytest

from helper.band import build_band
from helper.errors import InvalidCutEdge, UnverifiedWitness
from helper.geometry import RigidMotion2
from helper.radial import RmWitness
from helper.unfolder import (
    CutPlan,
    Layout,
    PlacedFace,
    check_layout,
    compatible_cuts,
    develop_band,
    farthest_b_edge,
    find_safe_cuts,
    isometry_error,
    l_a_chain,
    l_b_chain,
    plan_unfold,
    strip_order,
    unfold,
    unfold_with_fallback,
    z_sweep,
)


def square_face(face_id, x0, y0, side=1.0):
    pts = ((x0, y0), (x0 + side, y0), (x0 + side, y0 + side), (x0, y0 + side))
    labels = tuple(("B", i) for i in range(4))
    return PlacedFace(face_id, "band", labels, pts, RigidMotion2.identity())


def test_development_is_isometric(square_prismatoid):
    band = build_band(square_prismatoid)
    strip = develop_band(square_prismatoid, band, 3)
    assert len(strip.faces) == band.n_triangles
    assert [f.face_id for f in strip.faces] == [f"T{k}" for k in strip_order(band, 3)]
    first = strip.faces[0]
    assert np.allclose(first.points[0], (0.0, 0.0))
    assert first.points[2][1] == pytest.approx(0.0)
    assert first.points[2][0] > 0
    assert first.parent is None
    assert all(f.parent == prev.face_id for prev, f in zip(strip.faces, strip.faces[1:]))
    assert isometry_error(square_prismatoid, band, strip) < 1e-9


def test_cut_must_be_a_lateral_edge(square_prismatoid):
    band = build_band(square_prismatoid)
    assert develop_band(square_prismatoid, band, ("L", 2)).cut == 2
    for bad in (("B", 0), 8, -1, True, "L0"):
        with pytest.raises(InvalidCutEdge):
            develop_band(square_prismatoid, band, bad)


def test_developed_chains_visit_every_base_vertex(square_prismatoid):
    band = build_band(square_prismatoid)
    strip = develop_band(square_prismatoid, band, 0)
    lb, la = l_b_chain(strip), l_a_chain(strip)
    assert lb.side == "B" and la.side == "A"
    assert len(lb.indices) == square_prismatoid.B.n + 1
    assert len(la.indices) == square_prismatoid.A.n + 1
    assert lb.indices[0] == lb.indices[-1]
    assert sorted(set(lb.indices)) == [0, 1, 2, 3]
    assert len(lb.angles()) == square_prismatoid.B.n - 1


def test_flat_band_closes_without_overlap(square_prismatoid):
    flat = square_prismatoid.with_height(0.0)
    assert find_safe_cuts(flat) == list(range(8))


def test_plan_uses_a_safe_cut_at_the_witness_apex(square_prismatoid):
    band = build_band(square_prismatoid)
    plan = plan_unfold(square_prismatoid, band)
    assert plan.witness is not None
    assert plan.attach_a == plan.witness.edge
    assert plan.cut in find_safe_cuts(square_prismatoid, band)
    assert 0 <= plan.attach_b < square_prismatoid.B.n
    data = plan.to_dict()
    assert set(data) == {"cut", "attachB", "attachA", "witness"}


def test_explicit_witness_is_checked(square_prismatoid):
    with pytest.raises(UnverifiedWitness):
        plan_unfold(square_prismatoid, witness=RmWitness(0, 1, 4))
    plan = plan_unfold(square_prismatoid, witness=RmWitness(0, 2, 4), cut=("L", 1), attach_b=5)
    assert plan.cut == 1
    assert plan.attach_b == 1
    band = build_band(square_prismatoid)
    assert compatible_cuts(band, RmWitness(0, 2, 4)) == band.lateral_edges_at_a(2)


def test_unfold_attaches_both_bases(square_prismatoid):
    band = build_band(square_prismatoid)
    plan = plan_unfold(square_prismatoid, band)
    layout = unfold(square_prismatoid, plan, band)
    assert [f.face_id for f in layout.faces[-2:]] == ["B", "A"]
    assert layout.face("B").glue == ("B", plan.attach_b)
    assert layout.face("A").glue == ("A", plan.attach_a)
    assert layout.face("B").motion.reflect
    assert not layout.face("A").motion.reflect
    assert isometry_error(square_prismatoid, band, layout) < 1e-9
    tree = layout.attachment_tree()
    assert len(tree) == band.n_triangles + 2
    assert sum(parent is None for parent, _ in tree.values()) == 1
    assert layout.to_dict()["faces"][-1]["id"] == "A"


def test_small_square_band_unfolds_without_overlap(square_prismatoid):
    band = build_band(square_prismatoid)
    plan = plan_unfold(square_prismatoid, band)
    layout, used, rejected = unfold_with_fallback(square_prismatoid, plan, band)
    verdict = check_layout(layout, square_prismatoid.eps)
    assert verdict.nonoverlapping
    assert used.attach_b not in rejected


def test_unfold_rechecks_the_witness(square_prismatoid):
    plan = CutPlan(cut=0, attach_b=0, attach_a=1, witness=RmWitness(0, 2, 4))
    with pytest.raises(UnverifiedWitness):
        unfold(square_prismatoid, plan)


def test_farthest_b_edge_is_a_b_edge(square_prismatoid):
    band = build_band(square_prismatoid)
    for cut in range(band.n_lateral):
        assert 0 <= farthest_b_edge(band, cut) < square_prismatoid.B.n


def test_check_layout_reports_the_overlapping_pair():
    layout = Layout((square_face("T0", 0.0, 0.0), square_face("T1", 0.5, 0.5), square_face("T2", 3.0, 0.0)), 0, 0.0)
    verdict = check_layout(layout, 1e-9)
    assert not verdict.nonoverlapping
    assert (verdict.overlap.face_a, verdict.overlap.face_b) == ("T0", "T1")
    assert verdict.worst_area == pytest.approx(0.25)
    assert not verdict.marginal
    assert check_layout(layout, 1e-9, involving="T2").nonoverlapping


@pytest.mark.parametrize(
    "shift, overlapping, marginal",
    [
        (0.9, True, False),  # area 0.1, far above the 0.01 threshold
        (1.0 - 0.0105, True, True),  # sqrt(area) 0.1025 sits within 10ε of 100ε
        (1.0 - 0.0095, False, True),  # sqrt(area) 0.0975, just under
        (0.999, False, False),  # area 0.001
    ],
)
def test_marginal_flag_compares_lengths(shift, overlapping, marginal):
    layout = Layout((square_face("T0", 0.0, 0.0), square_face("T1", shift, 0.0)), 0, 0.0)
    verdict = check_layout(layout, 1e-3)
    assert verdict.threshold == pytest.approx(0.01)
    assert (not verdict.nonoverlapping) is overlapping
    assert verdict.marginal is marginal
    if overlapping:
        assert verdict.overlap.marginal is marginal


def test_touching_faces_are_not_marginal():
    layout = Layout((square_face("T0", 0.0, 0.0), square_face("T1", 1.0, 0.0)), 0, 0.0)
    verdict = check_layout(layout, 1e-9)
    assert verdict.worst_area == 0.0
    assert not verdict.marginal


def test_touching_faces_do_not_overlap():
    layout = Layout((square_face("T0", 0.0, 0.0), square_face("T1", 1.0, 0.0)), 0, 0.0)
    assert check_layout(layout, 1e-9).nonoverlapping
    empty = check_layout(Layout((), 0, 0.0))
    assert empty.nonoverlapping
    assert empty.worst_pair is None


def test_z_sweep_keeps_one_plan(square_prismatoid):
    plan = plan_unfold(square_prismatoid)
    results = z_sweep(square_prismatoid.B, square_prismatoid.A, plan, [0.1, 0.2, 0.5])
    assert [r.z for r in results] == [0.1, 0.2, 0.5]
    for r in results:
        assert r.phis_b
        assert max(r.phis_b) <= np.pi + 1e-9
