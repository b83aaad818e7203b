"""
Geometry Suite

Checks the planar kernel: predicate symmetry, random hull invariants and
rigid motions preserving distances.
"""

from __future__ import annotations

import math
from typing import Any, Dict, List, Optional

import numpy as np

from helper.errors import DegenerateTriangle
from helper.generator import random_convex_polygon
from helper.geometry import (
    ConvexPolygon,
    RigidMotion2,
    orientation,
    point_strictly_inside,
    segments_intersect,
    triangle_min_altitude,
    triangles_overlap,
)
from helper.plugin_loader import CheckOutcome, Plugin, SuiteContext, TrialOutcome


def _pairwise(points: np.ndarray) -> np.ndarray:
    return np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)


class GeometryPlugin(Plugin):
    """Suite for the planar primitives everything else builds on"""

    def get_name(self) -> str:
        return "geometry"

    def get_priority(self) -> Optional[int]:
        return None  # Use filename prefix (100)

    def get_plugin_type(self) -> str:
        return "suite"

    def run_trial(self, seed: int, ctx: SuiteContext) -> TrialOutcome:
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 13))
        poly = random_convex_polygon(n, rng=rng)

        angle_sum = sum(poly.interior_angles())
        if abs(angle_sum - (n - 2) * math.pi) > 1e-9:
            return TrialOutcome(ok=False, detail=f"Interior angles of a {n}-gon sum to {angle_sum}")
        if abs(poly.diameter() - 1.0) > 1e-9:
            return TrialOutcome(ok=False, detail=f"Normalized diameter is {poly.diameter()}")
        if not point_strictly_inside(poly, poly.centroid()):
            return TrialOutcome(ok=False, detail="Centroid is not strictly inside its polygon")

        p, q, r, s = rng.uniform(-1.0, 1.0, size=(4, 2))
        if orientation(p, q, r) != -orientation(q, p, r):
            return TrialOutcome(ok=False, detail="Swapping two points did not negate the orientation")
        if segments_intersect(p, q, r, s) != segments_intersect(r, s, p, q):
            return TrialOutcome(ok=False, detail="Segment intersection is not symmetric")

        t1, t2 = rng.uniform(-1.0, 1.0, size=(2, 3, 2))
        if min(triangle_min_altitude(t1), triangle_min_altitude(t2)) > 1e-3:
            try:
                if triangles_overlap(t1, t2) != triangles_overlap(t2, t1):
                    return TrialOutcome(ok=False, detail="Triangle overlap is not symmetric")
            except DegenerateTriangle as e:
                return TrialOutcome(ok=False, detail=f"Well-shaped triangle rejected: {e.message}")

        motion = RigidMotion2(
            angle=float(rng.uniform(-math.pi, math.pi)),
            tx=float(rng.uniform(-5, 5)),
            ty=float(rng.uniform(-5, 5)),
            reflect=bool(rng.integers(0, 2)),
        )
        moved = motion.apply_many(poly.vertices)
        distortion = float(np.abs(_pairwise(moved) - _pairwise(poly.array)).max())
        if distortion > 1e-11:
            return TrialOutcome(ok=False, detail=f"Rigid motion changed a distance by {distortion:.3e}")

        back = motion.compose(motion.inverse()).apply_many(poly.vertices)
        drift = float(np.abs(back - poly.array).max())
        if drift > 1e-10:
            return TrialOutcome(ok=False, detail=f"Motion composed with its inverse drifts by {drift:.3e}")

        aligned = RigidMotion2.from_segment_pair(poly.vertices[0], poly.vertices[1], moved[0], moved[1], motion.reflect)
        mismatch = float(np.abs(aligned.apply_many(poly.vertices) - moved).max())
        if mismatch > 1e-9:
            return TrialOutcome(ok=False, detail=f"Segment-pair motion misplaces vertices by {mismatch:.3e}")

        return TrialOutcome(margin=-distortion)

    def fixed_checks(self, ctx: SuiteContext) -> List[CheckOutcome]:
        checks = []
        square = ConvexPolygon(((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)))
        checks.append(CheckOutcome("unit-square-area", abs(square.area() - 1.0) < 1e-12, f"area {square.area()}"))

        left = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]
        right = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]
        shared = triangles_overlap(left, right)
        checks.append(CheckOutcome("shared-edge-is-not-overlap", not shared, "triangles sharing an edge reported as overlapping" if shared else ""))

        nested = triangles_overlap(left, [(0.1, 0.1), (0.5, 0.1), (0.1, 0.5)])
        checks.append(CheckOutcome("nested-triangles-overlap", nested, "" if nested else "contained triangle not reported"))
        return checks

    def summarize(self, outcomes: List[TrialOutcome]) -> Dict[str, Any]:
        margins = [o.margin for o in outcomes if o.margin is not None]
        return {"max distance distortion": -min(margins)} if margins else {}
