"""
Rotations Suite

Composes random rotation sequences whose angles sum to at most π. The
composed isometry must agree with applying the rotations one by one, and
for two rotations its centre must lie in the disk on the segment between
their centres. Whether the centre lands inside the hull of all centres is
measured and reported, since it does not hold in general.
"""

from __future__ import annotations

import math
from typing import Any, Dict, List, Optional

import numpy as np

from helper.constants import ROTATION_TOLERANCE
from helper.plugin_loader import CheckOutcome, Plugin, SuiteContext, TrialOutcome
from helper.rotations import (
    PlanarRotation,
    Translation,
    apply_sequentially,
    compose,
    hull_distance,
    hull_membership_check,
    thales_gap,
    two_rotation_apex,
    weighted_center,
)


class RotationsPlugin(Plugin):
    """Suite for rotation composition"""

    def get_name(self) -> str:
        return "rotations"

    def get_priority(self) -> Optional[int]:
        return None  # Use filename prefix (500)

    def get_plugin_type(self) -> str:
        return "suite"

    def run_trial(self, seed: int, ctx: SuiteContext) -> TrialOutcome:
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, 7))
        total = float(rng.uniform(0.05, math.pi))
        angles = rng.dirichlet(np.ones(k)) * total
        centres = rng.uniform(0.0, 1.0, size=(k, 2))
        rotations = [PlanarRotation(float(x), float(y), float(w)) for (x, y), w in zip(centres, angles)]

        composed = compose(rotations)
        if not isinstance(composed, PlanarRotation):
            return TrialOutcome(ok=False, detail=f"Angles summing to {total} composed to a translation")

        worst = 0.0
        points = rng.uniform(-1.0, 2.0, size=(5, 2))
        for q in points:
            worst = max(worst, float(np.linalg.norm(composed.apply(q) - apply_sequentially(rotations, q))))
        if worst > ROTATION_TOLERANCE:
            return TrialOutcome(ok=False, detail=f"Composed and sequential application differ by {worst:.3e}")

        moved = [composed.apply(q) for q in points[:2]]
        stretch = abs(np.linalg.norm(moved[0] - moved[1]) - np.linalg.norm(points[0] - points[1]))
        if stretch > ROTATION_TOLERANCE:
            return TrialOutcome(ok=False, detail=f"Composition changed a distance by {stretch:.3e}")

        margin = ROTATION_TOLERANCE - worst
        if k == 2 and np.linalg.norm(centres[0] - centres[1]) > 1e-6:
            gap = thales_gap(*rotations)
            if gap > 1e-9:
                return TrialOutcome(ok=False, detail=f"Two-rotation centre lies {gap:.3e} outside the disk on its centres")
            apex = two_rotation_apex(*rotations)
            if np.linalg.norm(apex - composed.centre) > 1e-8:
                return TrialOutcome(ok=False, detail=f"Isosceles apex {tuple(apex)} differs from centre {tuple(composed.centre)}")
            margin = -gap

        return TrialOutcome(
            margin=margin,
            measurements={
                "in hull": hull_membership_check(rotations, ctx.tolerance),
                "hull distance": hull_distance(rotations, composed.centre),
                "weighted gap": float(np.linalg.norm(composed.centre - weighted_center(rotations))),
            },
        )

    def fixed_checks(self, ctx: SuiteContext) -> List[CheckOutcome]:
        checks = []

        quarter = [PlanarRotation(0.0, 0.0, math.pi / 2), PlanarRotation(1.0, 0.0, math.pi / 2)]
        centre = compose(quarter).centre
        ok = np.allclose(centre, (0.5, -0.5), atol=1e-12) and np.allclose(two_rotation_apex(*quarter), centre, atol=1e-12)
        checks.append(
            CheckOutcome(
                "two-quarter-turns",
                bool(ok),
                f"centre {tuple(centre)}",
                measurements={"in hull": hull_membership_check(quarter), "hull distance": hull_distance(quarter, centre)},
            )
        )

        full = compose([PlanarRotation(float(i), 0.0, math.pi / 2) for i in range(4)])
        checks.append(CheckOutcome("full-turn-is-translation", isinstance(full, Translation), f"got {full}"))

        single = PlanarRotation(0.3, -0.2, 1.0)
        again = compose([single])
        same = isinstance(again, PlanarRotation) and np.allclose(again.centre, single.centre, atol=1e-12)
        checks.append(CheckOutcome("single-rotation", bool(same), f"got {again}"))
        return checks

    def summarize(self, outcomes: List[TrialOutcome]) -> Dict[str, Any]:
        measured = [o.measurements for o in outcomes if "in hull" in o.measurements]
        if not measured:
            return {}
        inside = sum(1 for m in measured if m["in hull"])
        return {
            "centre in hull": f"{inside}/{len(measured)}",
            "max hull distance": max(m["hull distance"] for m in measured),
            "max weighted-centre gap": max(m["weighted gap"] for m in measured),
        }
