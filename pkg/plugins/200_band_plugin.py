"""
Band Suite

Checks the lateral band of random nested prismatoids: face counts, edge
coverage, upward outward normals, hull validity and height-independent
combinatorics.
"""

from __future__ import annotations

from collections import Counter
from typing import Any, Dict, List, Optional

import numpy as np

from helper.band import build_band, face_normal_z, hull_validity_margin
from helper.constants import COMBINATORICS_HEIGHTS
from helper.errors import PlacementFailure
from helper.generator import random_nested_prismatoid, random_nested_prismoid
from helper.plugin_loader import CheckOutcome, Plugin, SuiteContext, TrialOutcome


class BandPlugin(Plugin):
    """Suite for band construction"""

    def get_name(self) -> str:
        return "band"

    def get_priority(self) -> Optional[int]:
        return None  # Use filename prefix (200)

    def get_plugin_type(self) -> str:
        return "suite"

    def run_trial(self, seed: int, ctx: SuiteContext) -> TrialOutcome:
        rng = np.random.default_rng(seed)
        n_b, n_a = (int(v) for v in rng.integers(3, 17, size=2))
        z = float(rng.choice(ctx.z_sweep))
        try:
            p = random_nested_prismatoid(n_b, n_a, z, seed=seed)
        except PlacementFailure:
            return TrialOutcome(applicable=False)
        band = build_band(p)

        if band.n_triangles != n_b + n_a or band.n_lateral != band.n_triangles:
            return TrialOutcome(ok=False, detail=f"{band.n_triangles} triangles for n_B={n_b}, n_A={n_a}")

        bases = Counter((t.kind, t.base) for t in band.triangles)
        expected = {("B", i) for i in range(n_b)} | {("A", j) for j in range(n_a)}
        if set(bases) != expected or any(c != 1 for c in bases.values()):
            return TrialOutcome(ok=False, detail="Base edges are not each used exactly once")

        if sorted(band.chain_B()) != list(range(n_b)) or sorted(band.chain_A()) != list(range(n_a)):
            return TrialOutcome(ok=False, detail="L_B or L_A does not visit every vertex once")

        for i in range(n_b):
            if not band.lateral_edges_at_b(i):
                return TrialOutcome(ok=False, detail=f"b{i} has no lateral edge")
        for j in range(n_a):
            if not band.lateral_edges_at_a(j):
                return TrialOutcome(ok=False, detail=f"a{j} has no lateral edge")

        for k in range(band.n_triangles):
            nz = face_normal_z(p, band, k)
            if nz is None or nz <= 0:
                return TrialOutcome(ok=False, detail=f"Triangle {k} does not face upward (n_z={nz})")

        margin = hull_validity_margin(p, band)
        if margin > p.eps:
            return TrialOutcome(ok=False, detail=f"A vertex lies {margin:.3e} outside a lateral face plane")

        reference = band.signature()
        for h in COMBINATORICS_HEIGHTS:
            if build_band(p.with_height(h)).signature() != reference:
                return TrialOutcome(ok=False, detail=f"Band combinatorics differ at z={h}")
        if build_band(p.with_height(0.0)).signature() != reference:
            return TrialOutcome(ok=False, detail="Flat band combinatorics differ")

        return TrialOutcome(margin=-margin, measurements={"coplanar": band.coplanar_count()})

    def fixed_checks(self, ctx: SuiteContext) -> List[CheckOutcome]:
        checks = []
        for n in (3, 6, 10):
            p = random_nested_prismoid(n, 0.2, seed=ctx.seed)
            count = build_band(p).coplanar_count()
            checks.append(
                CheckOutcome(
                    f"prismoid-{n}-trapezoids",
                    count == 2 * n,
                    "" if count == 2 * n else f"{count} coplanar triangles, expected {2 * n}",
                )
            )
        return checks

    def summarize(self, outcomes: List[TrialOutcome]) -> Dict[str, Any]:
        coplanar = sum(1 for o in outcomes if o.measurements.get("coplanar"))
        return {"bands with coplanar faces": coplanar}
