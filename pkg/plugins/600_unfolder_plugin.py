"""
Unfolder Suite

End-to-end band-unfolding of random nested prismatoids whose top has the
RM-property. For every height in the sweep the layout must not overlap,
every placed face must be congruent to its 3D face, and the developed
chain angles must equal the per-vertex openings. Draws without a witness
or a compatible safe cut are replaced from the trial seed's own stream,
so every trial unfolds one instance. Safe cuts of prismoids and of flat
bands are asserted; those of general prismatoids are only counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from helper.band import NestedPrismatoid, build_band
from helper.constants import ISOMETRY_TOLERANCE, MONOTONIC_SLACK
from helper.errors import PlacementFailure
from helper.generator import random_nested_prismatoid, random_nested_prismoid
from helper.opening import open_band_report
from helper.plugin_loader import CheckOutcome, Plugin, SuiteContext, TrialOutcome
from helper.radial import find_rm_property
from helper.unfolder import (
    CutPlan,
    Layout,
    check_layout,
    choose_witness,
    compatible_cuts,
    develop_band,
    farthest_b_edge,
    find_safe_cuts,
    isometry_error,
    l_a_chain,
    l_b_chain,
    unfold_with_fallback,
    z_sweep,
)
from helper.utils import trial_seed

ANGLE_AGREEMENT = 1e-9
MAX_TRIALS = 200
MAX_REDRAWS = 50
PRISMOID_COUNT = 50
NEAR_FLAT_Z = 1e-6


def _safe_sets(p: NestedPrismatoid, z_values) -> List[set]:
    return [set(find_safe_cuts(p.with_height(z))) for z in z_values]


@dataclass
class _Draw:
    """An instance ready to unfold, plus what was thrown away on the way"""

    prismatoid: Optional[NestedPrismatoid] = None
    plan: Optional[CutPlan] = None
    safe_counts: List[int] = field(default_factory=list)
    placement: int = 0
    no_plan: int = 0


def _draw_instance(seed: int, z_values) -> _Draw:
    """First instance from the seed's redraw stream with a witness and a compatible safe cut"""
    draw = _Draw()
    for r in range(MAX_REDRAWS):
        s = seed if r == 0 else trial_seed(seed, "unfolder-redraw", r)
        n_b, n_a = (int(v) for v in np.random.default_rng(s).integers(3, 17, size=2))
        try:
            p0 = random_nested_prismatoid(n_b, n_a, z_values[0], seed=s)
        except PlacementFailure:
            draw.placement += 1
            continue
        safe_sets = _safe_sets(p0, z_values)
        draw.safe_counts.append(min(len(safe) for safe in safe_sets))
        plan = _witnessed_plan(p0, safe_sets)
        if plan is None:
            draw.no_plan += 1
            continue
        draw.prismatoid, draw.plan = p0, plan
        break
    return draw


def _witnessed_plan(p: NestedPrismatoid, safe_sets: List[set]) -> Optional[CutPlan]:
    """Plan using the best witness and a cut at its apex that is safe at every height"""
    witness = choose_witness(p.A, find_rm_property(p.A))
    if witness is None:
        return None
    band = build_band(p)
    cuts = [k for k in compatible_cuts(band, witness) if all(k in safe for safe in safe_sets)]
    if not cuts:
        return None
    return CutPlan(cut=cuts[0], attach_b=farthest_b_edge(band, cuts[0]), attach_a=witness.edge, witness=witness)


def _soundness(p: NestedPrismatoid, layout: Layout) -> str:
    """Empty string when faces are congruent and chain angles match the openings"""
    band = build_band(p)
    err = isometry_error(p, band, layout)
    if err > ISOMETRY_TOLERANCE:
        return f"z={p.z}: a placed face is off by {err:.3e} relative"
    for side, chain in (("B", l_b_chain(layout)), ("A", l_a_chain(layout))):
        report = open_band_report(p, band, side)
        for index, angle in chain.angles().items():
            phi = report.by_index(index).phi
            if abs(angle - phi) > ANGLE_AGREEMENT:
                return f"z={p.z}: developed angle at {side.lower()}{index} is {angle!r}, opening says {phi!r}"
    return ""


class UnfolderPlugin(Plugin):
    """Suite for band-unfolding without overlap"""

    def get_name(self) -> str:
        return "unfolder"

    def get_priority(self) -> Optional[int]:
        return None  # Use filename prefix (600)

    def get_plugin_type(self) -> str:
        return "suite"

    def trial_count(self, ctx: SuiteContext) -> int:
        return max(1, min(MAX_TRIALS, ctx.trials // 5))

    def run_trial(self, seed: int, ctx: SuiteContext) -> TrialOutcome:
        draw = _draw_instance(seed, ctx.z_sweep)
        measurements: Dict[str, Any] = {
            "safe cuts": draw.safe_counts,
            "placement redraws": draw.placement,
            "no plan redraws": draw.no_plan,
        }
        if draw.plan is None:
            return TrialOutcome(
                ok=False,
                detail=f"No instance with a witness and a compatible safe cut in {MAX_REDRAWS} draws",
                measurements=measurements,
            )
        p0, plan = draw.prismatoid, draw.plan

        fallbacks = 0
        margin = np.inf
        previous = None
        for verdict in z_sweep(p0.B, p0.A, plan, ctx.z_sweep):
            p = p0.with_height(verdict.z)
            layout, used, rejected = unfold_with_fallback(p, plan)
            if rejected:
                fallbacks += 1
            final = check_layout(layout, p.eps)
            if not final.nonoverlapping:
                o = final.overlap
                flag = " (marginal)" if o.marginal else ""
                return TrialOutcome(
                    ok=False,
                    detail=f"z={verdict.z}: {o.face_a} overlaps {o.face_b} by {o.area:.3e}{flag}; plan {used.to_dict()}",
                )
            margin = min(margin, final.threshold - final.worst_area)

            problem = _soundness(p, layout)
            if problem:
                return TrialOutcome(ok=False, detail=problem)

            if previous is not None and any(b < a - MONOTONIC_SLACK for a, b in zip(previous, verdict.phis_b)):
                return TrialOutcome(ok=False, detail=f"A band angle on L_B shrank on the way up to z={verdict.z}")
            previous = verdict.phis_b

        measurements["B fallbacks"] = fallbacks
        return TrialOutcome(margin=float(margin), measurements=measurements)

    def fixed_checks(self, ctx: SuiteContext) -> List[CheckOutcome]:
        checks = []

        checks.append(self._prismoid_cuts(ctx))
        checks.extend(self._flat_cuts(ctx))
        checks.append(self._figure_instance(ctx))
        return checks

    def _prismoid_cuts(self, ctx: SuiteContext) -> CheckOutcome:
        """PRISMOID_COUNT prismoids with 3..16 sides; a seed that cannot be placed is replaced by the next"""
        empty, drawn, skipped = [], 0, 0
        index = 0
        while drawn < PRISMOID_COUNT and index < 4 * PRISMOID_COUNT:
            seed = trial_seed(ctx.seed, "unfolder-prismoid", index)
            index += 1
            try:
                p = random_nested_prismoid(3 + drawn % 14, 0.2, seed=seed)
            except PlacementFailure:
                skipped += 1
                continue
            if not find_safe_cuts(p):
                empty.append(seed)
            drawn += 1
        if drawn < PRISMOID_COUNT:
            return CheckOutcome("prismoids-have-safe-cuts", False, f"only {drawn}/{PRISMOID_COUNT} prismoids placed")
        return CheckOutcome(
            "prismoids-have-safe-cuts",
            not empty,
            f"no safe cut for prismoid seed(s) {empty}" if empty else "",
            measurements={"placement redraws": skipped} if skipped else {},
        )

    def _flat_cuts(self, ctx: SuiteContext) -> List[CheckOutcome]:
        """Every cut is safe on the flat band; just above it only counts are reported"""
        p = random_nested_prismatoid(9, 7, 0.0, seed=ctx.seed)
        band = build_band(p)
        flat = find_safe_cuts(p, band)
        checks = [
            CheckOutcome("flat-all-cuts-safe", len(flat) == band.n_lateral, f"{len(flat)}/{band.n_lateral} lateral edges safe")
        ]

        # overlaps of cut strips grow like z², so near z = 0 they sit at the area threshold
        lifted = p.with_height(NEAR_FLAT_Z)
        safe = marginal = 0
        for k in range(band.n_lateral):
            verdict = check_layout(develop_band(lifted, band, k), lifted.eps)
            if verdict.nonoverlapping:
                safe += 1
            elif verdict.marginal:
                marginal += 1
        checks.append(
            CheckOutcome(
                "near-flat-cuts",
                True,
                measurements={"z": NEAR_FLAT_Z, "safe": safe, "marginal": marginal, "lateral edges": band.n_lateral},
            )
        )
        return checks

    def _figure_instance(self, ctx: SuiteContext) -> CheckOutcome:
        """14-gon base, 16-gon top, z = 0.2, plus the flat layout of the same pair"""
        for s in range(100):
            seed = trial_seed(ctx.seed, "unfolder-figure", s)
            try:
                p = random_nested_prismatoid(14, 16, 0.2, seed=seed)
            except PlacementFailure:
                continue
            plan = _witnessed_plan(p, _safe_sets(p, [0.2]))
            if plan is None:
                continue
            for z in (0.0, 0.2):
                q = p.with_height(z)
                layout, _, _ = unfold_with_fallback(q, plan)
                verdict = check_layout(layout, q.eps)
                if not verdict.nonoverlapping:
                    o = verdict.overlap
                    return CheckOutcome("figure-instance", False, f"seed {seed}, z={z}: {o.face_a} overlaps {o.face_b}")
            return CheckOutcome("figure-instance", True, measurements={"seed": seed, "plan": plan.to_dict()})
        return CheckOutcome("figure-instance", False, "no 14/16 instance with a witness and a safe cut in 100 seeds")

    def summarize(self, outcomes: List[TrialOutcome]) -> Dict[str, Any]:
        counted = [c for o in outcomes for c in o.measurements.get("safe cuts", [])]
        return {
            "unfolded": sum(1 for o in outcomes if o.ok and "B fallbacks" in o.measurements),
            "placement redraws": sum(o.measurements.get("placement redraws", 0) for o in outcomes),
            "no witness or compatible safe cut": sum(o.measurements.get("no plan redraws", 0) for o in outcomes),
            "prismatoids with a safe cut at every height": f"{sum(1 for c in counted if c)}/{len(counted)}",
            "B fallbacks": sum(o.measurements.get("B fallbacks", 0) for o in outcomes),
        }
