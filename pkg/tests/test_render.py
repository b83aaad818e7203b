import csv
import math

import pytest

from helper.band import build_band
from helper.generator import regular_polygon
from helper.radial import RmWitness
from helper.render import (
    emit_phi_csv,
    grid_shapes,
    layout_shapes,
    polygon_shapes,
    render_layout,
    render_phi_plot,
    render_polygon,
    row_shapes,
    shapes_bounds,
    to_svg,
    write_phi_csv,
)
from helper.unfolder import CutPlan, layout_overlaps, unfold


def test_empty_scene_has_a_unit_canvas():
    svg = to_svg([])
    assert 'viewBox="-1 -1 2 2"' in svg
    assert "<polygon" not in svg


def test_rendering_is_deterministic(square_prismatoid):
    plan = CutPlan(cut=0, attach_b=2, attach_a=0, witness=RmWitness(0, 2, 4))
    layout = unfold(square_prismatoid, plan, build_band(square_prismatoid))
    first = render_layout(layout, title="square")
    assert first == render_layout(layout, title="square")
    assert first.count("<polygon") == len(layout.faces)
    assert "square" in first


def test_layout_marks_the_uncut_top_edge_and_overlaps(square_prismatoid):
    layout = unfold(square_prismatoid, CutPlan(cut=0, attach_b=2, attach_a=0), build_band(square_prismatoid))
    kinds = [s.kind for s in layout_shapes(layout)]
    assert kinds[0] == "B" and kinds[-1] == "witness"
    finding = layout_overlaps(layout)
    if finding is not None:
        assert [s.kind for s in layout_shapes(layout, finding)][-2:] == ["overlap", "overlap"]


def test_polygon_with_witness():
    square = regular_polygon(4)
    shapes = polygon_shapes(square, RmWitness(0, 2, 4))
    assert [s.kind for s in shapes] == ["polygon", "right", "left", "witness"]
    assert shapes[-1].points == ((1.0, 0.0), (0.0, 1.0))
    assert render_polygon(square).count("<polygon") == 1


def test_grid_and_row_layouts_do_not_stack_cells():
    cells = [polygon_shapes(regular_polygon(n)) for n in (3, 4, 5)]
    grid = grid_shapes(cells, columns=2)
    assert len(grid) == 3
    assert shapes_bounds(grid[0:1])[2] < shapes_bounds(grid[1:2])[0]
    row = row_shapes(cells)
    assert shapes_bounds(row[0:1])[2] < shapes_bounds(row[1:2])[0]
    assert shapes_bounds(row[0:1])[1] == pytest.approx(0.0)


def test_phi_csv(tmp_path):
    theta = 2 * math.pi / 3
    rows = emit_phi_csv(theta, 0.0, 1.0, [0.0, 0.5, 1.0])
    assert rows[0] == (0.0, pytest.approx(theta))
    path = tmp_path / "phi.csv"
    write_phi_csv(path, rows)
    with open(path, newline="") as f:
        read = list(csv.reader(f))
    assert read[0] == ["z", "phi"]
    assert [float(v) for v in read[2]] == [0.5, rows[1][1]]


def test_phi_csv_to_stdout(capsys):
    write_phi_csv("-", [(0.0, 1.0)])
    assert capsys.readouterr().out == "z,phi\n0.0,1.0\n"


def test_phi_plot():
    theta = 2 * math.pi / 3
    svg = render_phi_plot(emit_phi_csv(theta, 0.0, 1.0, [0.0, 1.0, 2.0]), theta)
    assert svg.count("<polyline") == 5
    assert "theta = 120.0 deg" in svg
    assert 'viewBox="-1 -1 2 2"' in render_phi_plot([], theta)
