"""
SVG and CSV emitters

Everything is drawn into a y-up world: shapes are collected as styled
polylines, then emitted through svgwrite inside a scale(1,-1) group so ccw
polygons read ccw on screen. Output is a pure function of the input, so the
same geometry always gives byte-identical files.
"""

import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import svgwrite

from .constants import DEFAULT_SVG_SIZE
from .geometry import ConvexPolygon, PolyChain
from .opening import phi_closed_form
from .radial import Involute, RmWitness, boundary_paths
from .unfolder import Layout, OverlapFinding

STYLES: Dict[str, Dict[str, str]] = {
    "band": {"fill": "#d9d9d9", "stroke": "#4d4d4d"},
    "B": {"fill": "#fdd0a2", "stroke": "#4d4d4d"},
    "A": {"fill": "#c6dbef", "stroke": "#4d4d4d"},
    "polygon": {"fill": "#f2f2f2", "stroke": "#4d4d4d"},
    "overlap": {"fill": "#d62728", "fill-opacity": "0.35", "stroke": "#d62728"},
    "witness": {"fill": "none", "stroke": "#d62728", "weight": "3"},
    "right": {"fill": "none", "stroke": "#1f77b4", "weight": "2"},
    "left": {"fill": "none", "stroke": "#2ca02c", "weight": "2"},
    "chain": {"fill": "none", "stroke": "#000000", "weight": "2"},
    "opened": {"fill": "none", "stroke": "#9467bd", "weight": "2", "dash": "1"},
    "involute": {"fill": "none", "stroke": "#ff7f0e", "weight": "1.5"},
    "axis": {"fill": "none", "stroke": "#8c8c8c", "weight": "1"},
    "guide": {"fill": "none", "stroke": "#bdbdbd", "weight": "1", "dash": "1"},
    "curve": {"fill": "none", "stroke": "#1f77b4", "weight": "2"},
}

_PAD = 0.05


@dataclass(frozen=True)
class Shape:
    kind: str
    points: Tuple[Tuple[float, float], ...]
    closed: bool = True


def _shape(kind: str, points: Iterable[Sequence[float]], closed: bool = True) -> Shape:
    return Shape(kind, tuple((round(float(x), 9), round(float(y), 9)) for x, y in points), closed)


def shift(shapes: Sequence[Shape], dx: float, dy: float) -> List[Shape]:
    return [_shape(s.kind, [(x + dx, y + dy) for x, y in s.points], s.closed) for s in shapes]


def shapes_bounds(shapes: Sequence[Shape]) -> Optional[Tuple[float, float, float, float]]:
    pts = [p for s in shapes for p in s.points]
    if not pts:
        return None
    arr = np.array(pts)
    return float(arr[:, 0].min()), float(arr[:, 1].min()), float(arr[:, 0].max()), float(arr[:, 1].max())


def to_svg(shapes: Sequence[Shape], size: int = DEFAULT_SVG_SIZE, title: Optional[str] = None) -> str:
    """Emit shapes as an SVG document string

    Args:
        shapes: Shapes in y-up world coordinates, drawn in order
        size: Canvas width and height in pixels
        title: Optional caption drawn at the top

    Returns:
        SVG text; an empty shape list gives an empty canvas over (-1, -1, 2, 2)
    """
    bounds = shapes_bounds(shapes)
    if bounds is None:
        view = (-1.0, -1.0, 2.0, 2.0)
    else:
        minx, miny, maxx, maxy = bounds
        span = max(maxx - minx, maxy - miny, 1e-9)
        pad = _PAD * span
        # y is flipped, so the box spans [-maxy, -miny]
        view = (minx - pad, -maxy - pad, (maxx - minx) + 2 * pad, (maxy - miny) + 2 * pad)
    unit = max(view[2], view[3]) / 400.0

    dwg = svgwrite.Drawing(
        size=(f"{size}px", f"{size}px"),
        profile="full",
        viewBox=" ".join(f"{v:.9g}" for v in view),
    )
    world = dwg.g(transform="scale(1,-1)")
    for s in shapes:
        style = STYLES[s.kind]
        attrs = {
            "fill": style["fill"],
            "stroke": style["stroke"],
            "stroke_width": f"{float(style.get('weight', '1')) * unit:.6g}",
            "stroke_linejoin": "round",
        }
        if "fill-opacity" in style:
            attrs["fill_opacity"] = style["fill-opacity"]
        if "dash" in style:
            attrs["stroke_dasharray"] = f"{4 * unit:.6g},{3 * unit:.6g}"
        if s.closed:
            world.add(dwg.polygon(points=s.points, **attrs))
        else:
            world.add(dwg.polyline(points=s.points, **attrs))
    dwg.add(world)
    if title:
        dwg.add(
            dwg.text(
                title,
                insert=(view[0] + 2 * unit, view[1] + 12 * unit),
                font_size=f"{10 * unit:.6g}",
                font_family="sans-serif",
            )
        )
    return dwg.tostring()


def write_svg(path: Path, svg: str) -> None:
    Path(path).write_text(svg, encoding="utf-8")


# =============================================================================
# Scene builders
# =============================================================================


def layout_shapes(layout: Layout, finding: Optional[OverlapFinding] = None) -> List[Shape]:
    """Band gray, B and A in their own fills, A's uncut edge red, overlapping faces tinted"""
    shapes = []
    for kind in ("B", "band", "A"):
        for f in layout.faces:
            if f.kind == kind:
                shapes.append(_shape(kind, f.points))
    if layout.attach_a is not None and any(f.face_id == "A" for f in layout.faces):
        a = layout.face("A")
        e = layout.attach_a
        shapes.append(_shape("witness", [a.points[e], a.points[(e + 1) % len(a.points)]], closed=False))
    if finding is not None:
        for face_id in (finding.face_a, finding.face_b):
            shapes.append(_shape("overlap", layout.face(face_id).points))
    return shapes


def render_layout(layout: Layout, finding: Optional[OverlapFinding] = None, size: int = DEFAULT_SVG_SIZE, title: Optional[str] = None) -> str:
    return to_svg(layout_shapes(layout, finding), size, title)


def polygon_shapes(poly: ConvexPolygon, witness: Optional[RmWitness] = None) -> List[Shape]:
    """Polygon with its witness: edge red, cw path from a blue, ccw path from b green"""
    shapes = [_shape("polygon", poly.vertices)]
    if witness is not None:
        right, left = boundary_paths(poly, witness.edge, witness.apex)
        shapes.append(_shape("right", right.vertices, closed=False))
        shapes.append(_shape("left", left.vertices, closed=False))
        shapes.append(_shape("witness", [poly.vertices[witness.a], poly.vertices[witness.b]], closed=False))
    return shapes


def render_polygon(poly: ConvexPolygon, witness: Optional[RmWitness] = None, size: int = DEFAULT_SVG_SIZE) -> str:
    return to_svg(polygon_shapes(poly, witness), size)


def grid_shapes(cells: Sequence[List[Shape]], columns: int = 8, gap: float = 0.2) -> List[Shape]:
    """Tile shape groups left to right, top to bottom, one diameter-sized cell each"""
    out: List[Shape] = []
    bounds = [shapes_bounds(c) for c in cells]
    cell = max([max(b[2] - b[0], b[3] - b[1]) for b in bounds if b is not None] + [1.0]) + gap
    for idx, (shapes, b) in enumerate(zip(cells, bounds)):
        if b is None:
            continue
        row, col = divmod(idx, columns)
        cx, cy = (b[0] + b[2]) / 2, (b[1] + b[3]) / 2
        out.extend(shift(shapes, col * cell - cx, -row * cell - cy))
    return out


def row_shapes(groups: Sequence[List[Shape]], gap: float = 0.2) -> List[Shape]:
    """Place shape groups side by side, bottoms aligned"""
    out: List[Shape] = []
    cursor = 0.0
    for shapes in groups:
        b = shapes_bounds(shapes)
        if b is None:
            continue
        out.extend(shift(shapes, cursor - b[0], -b[1]))
        cursor += (b[2] - b[0]) + gap
    return out


def involute_shapes(chain: PolyChain, involute: Involute, opened: Optional[PolyChain] = None) -> List[Shape]:
    shapes = [_shape("involute", arc.sample(), closed=False) for arc in involute.arcs]
    if opened is not None:
        shapes.append(_shape("opened", opened.vertices, closed=False))
    shapes.append(_shape("chain", chain.vertices, closed=False))
    return shapes


def render_involute(chain: PolyChain, involute: Involute, opened: Optional[PolyChain] = None, size: int = DEFAULT_SVG_SIZE) -> str:
    return to_svg(involute_shapes(chain, involute, opened), size)


def opening_shapes(chain: PolyChain, opened: PolyChain) -> List[Shape]:
    return [_shape("opened", opened.vertices, closed=False), _shape("chain", chain.vertices, closed=False)]


def prismatoid_shapes(B: ConvexPolygon, A: ConvexPolygon) -> List[Shape]:
    """Top view: A drawn over B"""
    return [_shape("B", B.vertices), _shape("A", A.vertices)]


def render_phi_plot(rows: Sequence[Tuple[float, float]], theta: float, size: int = DEFAULT_SVG_SIZE) -> str:
    """φ(z) curve with guides at θ and π; z and φ share one scale"""
    if not rows:
        return to_svg([], size)
    zs = [z for z, _ in rows]
    z0, z1 = min(zs), max(zs)
    shapes = [
        _shape("axis", [(z0, 0.0), (z1, 0.0)], closed=False),
        _shape("axis", [(z0, 0.0), (z0, math.pi)], closed=False),
        _shape("guide", [(z0, theta), (z1, theta)], closed=False),
        _shape("guide", [(z0, math.pi), (z1, math.pi)], closed=False),
        _shape("curve", rows, closed=False),
    ]
    return to_svg(shapes, size, title=f"phi(z), theta = {math.degrees(theta):.1f} deg")


# =============================================================================
# CSV
# =============================================================================


def emit_phi_csv(theta: float, x: float, y: float, z_grid: Sequence[float]) -> List[Tuple[float, float]]:
    """(z, φ(z)) rows from the closed form

    Raises:
        DomainError: Propagated from the closed form
    """
    return [(float(z), phi_closed_form(theta, x, y, float(z))) for z in z_grid]


def write_phi_csv(path, rows: Sequence[Tuple[float, float]]) -> None:
    """Write rows with a z,phi header; path "-" writes to stdout"""
    if str(path) == "-":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["z", "phi"])
        writer.writerows(rows)
        return
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["z", "phi"])
        writer.writerows(rows)
