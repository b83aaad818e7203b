"""
Generator Suite

Random instances must be valid, normalized, nested with margin and
reproducible from their seed. Fixed checks cover the regular polygons,
the spiked hexagon without the RM-property and the overlapping unfolding
found for it.
"""

from __future__ import annotations

import math
from typing import Any, Dict, List, Optional

import numpy as np
from shapely.geometry import Point

from helper.constants import NESTING_MARGIN
from helper.errors import PlacementFailure, PreconditionViolation
from helper.generator import (
    find_overlap_demo,
    random_convex_polygon,
    random_nested_prismatoid,
    random_nested_prismoid,
    regular_polygon,
    rm_frequency,
    rm_property_threshold,
    spiked_hexagon,
)
from helper.geometry import cross2
from helper.plugin_loader import CheckOutcome, Plugin, SuiteContext, TrialOutcome
from helper.radial import acute_vertices, boundary_paths, find_rm_property


class GeneratorPlugin(Plugin):
    """Suite for instance generation"""

    def get_name(self) -> str:
        return "generator"

    def get_priority(self) -> Optional[int]:
        return None  # Use filename prefix (700)

    def get_plugin_type(self) -> str:
        return "suite"

    def run_trial(self, seed: int, ctx: SuiteContext) -> TrialOutcome:
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 21))
        poly = random_convex_polygon(n, seed=seed)
        if poly.n != n:
            return TrialOutcome(ok=False, detail=f"Asked for {n} vertices, got {poly.n}")
        if abs(poly.diameter() - 1.0) > 1e-9 or np.linalg.norm(poly.centroid()) > 1e-9:
            return TrialOutcome(ok=False, detail="Polygon is not normalized")
        if random_convex_polygon(n, seed=seed) != poly:
            return TrialOutcome(ok=False, detail="Same seed gave a different polygon")

        n_b, n_a = (int(v) for v in rng.integers(3, 17, size=2))
        try:
            p = random_nested_prismatoid(n_b, n_a, 0.2, seed=seed)
        except PlacementFailure:
            return TrialOutcome(applicable=False)
        if random_nested_prismatoid(n_b, n_a, 0.2, seed=seed) != p:
            return TrialOutcome(ok=False, detail="Same seed gave a different prismatoid")
        boundary = p.B.to_shapely()
        clearance = min(boundary.exterior.distance(Point(v)) for v in p.A.vertices)
        if clearance < NESTING_MARGIN - 1e-9 or not all(boundary.contains(Point(v)) for v in p.A.vertices):
            return TrialOutcome(ok=False, detail=f"Top sits {clearance:.3e} from the base boundary")

        try:
            prismoid = random_nested_prismoid(n_b, 0.2, seed=seed)
        except PlacementFailure:
            return TrialOutcome(applicable=False)
        for i in range(n_b):
            b0, b1 = prismoid.B.edge(i)
            a0, a1 = prismoid.A.edge(i)
            skew = abs(cross2((b1 - b0) / np.linalg.norm(b1 - b0), (a1 - a0) / np.linalg.norm(a1 - a0)))
            if skew > 1e-9:
                return TrialOutcome(ok=False, detail=f"Prismoid edge {i} is not parallel to its base edge")

        return TrialOutcome(margin=clearance - NESTING_MARGIN)

    def fixed_checks(self, ctx: SuiteContext) -> List[CheckOutcome]:
        checks = []

        square = regular_polygon(4)
        hexagon = regular_polygon(6)
        regular_ok = np.allclose(square.vertices[0], (1.0, 0.0)) and np.allclose(hexagon.interior_angles(), 2 * math.pi / 3)
        checks.append(CheckOutcome("regular-polygons", bool(regular_ok), "unexpected vertex or angle"))

        spiked = spiked_hexagon()
        witnesses = find_rm_property(spiked)
        every_split_acute = True
        for edge in range(spiked.n):
            for apex in range(spiked.n):
                if apex in (edge, (edge + 1) % spiked.n):
                    continue
                right, left = boundary_paths(spiked, edge, apex)
                if not any(acute_vertices(chain) for chain in (right, left) if chain.n >= 3):
                    every_split_acute = False
        checks.append(
            CheckOutcome(
                "spiked-hexagon-lacks-rm-property",
                not witnesses and every_split_acute,
                f"{len(witnesses)} witness(es); acute joint on every split: {every_split_acute}",
            )
        )

        try:
            threshold = rm_property_threshold()
            checks.append(
                CheckOutcome("rm-property-threshold", 0.0 < threshold < 0.8, measurements={"sharpness": round(threshold, 9)})
            )
        except PreconditionViolation as e:
            checks.append(CheckOutcome("rm-property-threshold", False, e.message))

        demo = find_overlap_demo(spiked, seed=ctx.seed)
        checks.append(
            CheckOutcome(
                "spiked-hexagon-overlaps",
                demo is not None,
                "no overlapping band-unfolding found" if demo is None else "",
                measurements={}
                if demo is None
                else {"bases tried": demo.trials, "z": demo.prismatoid.z, "plan": demo.plan.to_dict(), "pair": [demo.finding.face_a, demo.finding.face_b]},
            )
        )

        hits, count = rm_frequency(seed=ctx.seed)
        checks.append(CheckOutcome("rm-property-frequency", True, measurements={"with RM-property": f"{hits}/{count}"}))
        return checks
