"""
Radial Suite

Radially monotone chains: acute joints break the property, a convex chain
is RM exactly when it is RM from its first vertex, and opening an RM chain
never makes it cross itself. Also checks the RM-property of regular
polygons and the involute traced while a chain straightens.
"""

from __future__ import annotations

import math
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from helper.generator import random_convex_polygon, regular_polygon
from helper.geometry import PolyChain, RigidMotion2
from helper.plugin_loader import CheckOutcome, Plugin, SuiteContext, TrialOutcome
from helper.radial import (
    acute_vertices,
    check_noncrossing,
    find_crossing_opening,
    find_rm_property,
    involute_of,
    is_rm,
    is_rm_from,
    open_chain,
    rm_margin,
)


def _acute_chain(rng: np.random.Generator) -> Tuple[PolyChain, int]:
    """Convex chain of 6..12 vertices with one acute joint planted at a random interior index

    The other joints turn so little that the total turn stays below π, which
    keeps the chain simple.
    """
    k = int(rng.integers(6, 13))
    m = int(rng.integers(1, k - 1))
    sharp = float(rng.uniform(math.pi / 2 + 0.05, math.pi - 0.1))
    turns = rng.uniform(0.0, (math.pi - 0.05 - sharp) / (k - 3), size=k - 2)
    turns[m - 1] = sharp
    headings = np.concatenate([[0.0], np.cumsum(turns)])
    steps = rng.uniform(0.2, 1.5, size=k - 1)[:, None] * np.column_stack([np.cos(headings), np.sin(headings)])
    pts = np.vstack([[0.0, 0.0], np.cumsum(steps, axis=0)])
    motion = RigidMotion2(angle=float(rng.uniform(-math.pi, math.pi)), tx=float(rng.normal()), ty=float(rng.normal()))
    return PolyChain(tuple(map(tuple, motion.apply_many(pts)))), m


def _polygon_chain(rng: np.random.Generator, rm_only: bool) -> Optional[PolyChain]:
    """Boundary run of a random convex polygon, the longest RM one when rm_only"""
    n = int(rng.integers(5, 13))
    poly = random_convex_polygon(n, rng=rng)
    start = int(rng.integers(0, n))
    for k in range(min(n, 7), 2, -1):
        chain = PolyChain(tuple(poly.vertices[(start + t) % n] for t in range(k)))
        if not rm_only or is_rm(chain):
            return chain
    return None


class RadialPlugin(Plugin):
    """Suite for radial monotonicity and chain opening"""

    def get_name(self) -> str:
        return "radial"

    def get_priority(self) -> Optional[int]:
        return None  # Use filename prefix (400)

    def get_plugin_type(self) -> str:
        return "suite"

    def run_trial(self, seed: int, ctx: SuiteContext) -> TrialOutcome:
        rng = np.random.default_rng(seed)

        acute, joint = _acute_chain(rng)
        if is_rm(acute):
            return TrialOutcome(ok=False, detail=f"Chain with an acute joint reported RM: {acute.vertices}")
        if acute_vertices(acute) != [joint]:
            return TrialOutcome(ok=False, detail=f"Acute joint not detected: {acute_vertices(acute)}")

        convex = _polygon_chain(rng, rm_only=False)
        if convex is not None and is_rm_from(convex) != is_rm(convex):
            return TrialOutcome(ok=False, detail=f"RM from the first vertex disagrees with RM on {convex.vertices}")

        chain = _polygon_chain(rng, rm_only=True)
        if chain is None:
            return TrialOutcome(applicable=False)

        alphas = chain.angles()
        omegas = [float(u) * (math.pi - a) for u, a in zip(rng.random(len(alphas)), alphas)]
        if not check_noncrossing(chain, omegas):
            return TrialOutcome(ok=False, detail=f"Opened RM chain crosses itself: ω={omegas}, chain={chain.vertices}")

        opened = open_chain(chain, omegas)
        drift = float(np.abs(opened.segment_lengths() - chain.segment_lengths()).max())
        if drift > 1e-12 * max(1.0, chain.length()):
            return TrialOutcome(ok=False, detail=f"Opening changed a segment length by {drift:.3e}")
        if not is_rm(opened):
            return TrialOutcome(ok=False, detail=f"Opened RM chain is not RM: ω={omegas}")

        return TrialOutcome(margin=rm_margin(chain))

    def fixed_checks(self, ctx: SuiteContext) -> List[CheckOutcome]:
        checks = []

        lacking = [n for n in range(3, 21) if not find_rm_property(regular_polygon(n))]
        checks.append(
            CheckOutcome("regular-polygons-have-rm-property", not lacking, f"no witness for n={lacking}" if lacking else "")
        )

        arc = PolyChain(tuple((math.cos(t), math.sin(t)) for t in np.linspace(0.0, 1.6, 6)))
        inv = involute_of(arc)
        worst = float(np.linalg.norm(inv.arcs[-1].point(0.0) - arc.array[-1]))
        for k in range(1, len(inv.arcs)):
            worst = max(worst, float(np.linalg.norm(inv.arcs[k].point(1.0) - inv.arcs[k - 1].point(0.0))))
        # straighten joints from the far end; the endpoint walks the arc junctions
        room = [math.pi - a for a in arc.angles()]
        for m in range(arc.n - 2, 0, -1):
            omegas = [0.0] * (m - 1) + room[m - 1 :]
            end = open_chain(arc, omegas).array[-1]
            worst = max(worst, float(np.linalg.norm(end - inv.arcs[m - 1].point(1.0))))
        checks.append(CheckOutcome("involute-junctions", worst <= 1e-9, f"worst gap {worst:.3e}"))

        spiral = PolyChain(tuple((math.cos(-math.radians(d)), math.sin(-math.radians(d))) for d in range(0, 271, 15)))
        crossing = find_crossing_opening(spiral)
        checks.append(
            CheckOutcome(
                "long-arc-opening-crosses",
                crossing is not None and not is_rm(spiral),
                "" if crossing is not None else "no crossing opening found for a 270° arc",
                measurements={"ω1": crossing[0]} if crossing else {},
            )
        )
        return checks
