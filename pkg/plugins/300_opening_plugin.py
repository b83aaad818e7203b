"""
Opening Suite

Lifts one point over the convex angle at a hinge and checks that the angle
opens strictly without passing π, that the closed form agrees with the
geometric fan sum, that mirrored lifts open by complementary amounts and
that the opening grows with height. Fans of several lifted points must
still open; how often they pass π is reported.
"""

from __future__ import annotations

import math
from typing import Any, Dict, List, Optional

import numpy as np

from helper.opening import (
    VertexOpeningConfig,
    check_monotonic,
    check_opening,
    phi_closed_form,
    phi_derivative_numeric,
    phi_derivative_printed,
    phi_from_geometry,
    reflection_identity,
    spherical_path_length,
)
from helper.plugin_loader import CheckOutcome, Plugin, SuiteContext, TrialOutcome

AGREEMENT = 1e-10
Z_GRID = np.linspace(0.0, 5.0, 50)


def _hinge(theta: float):
    return (-1.0, 0.0), (0.0, 0.0), (math.cos(math.pi - theta), math.sin(math.pi - theta))


def _on_sweep(s: float, r: float = 1.0):
    """Planar point at sweep angle s from the a-ray toward the c-ray"""
    return r * math.cos(math.pi - s), r * math.sin(math.pi - s)


class OpeningPlugin(Plugin):
    """Suite for the vertex opening analysis"""

    def get_name(self) -> str:
        return "opening"

    def get_priority(self) -> Optional[int]:
        return None  # Use filename prefix (300)

    def get_plugin_type(self) -> str:
        return "suite"

    def run_trial(self, seed: int, ctx: SuiteContext) -> TrialOutcome:
        rng = np.random.default_rng(seed)
        theta = float(rng.uniform(0.1, math.pi))
        z = float(rng.uniform(0.01, 3.0))
        a, b, c = _hinge(theta)

        # one lifted point anywhere in the wedge
        x, y = _on_sweep(float(rng.uniform(0.05 * theta, 0.95 * theta)), float(rng.uniform(0.2, 1.5)))
        single = VertexOpeningConfig(a, b, c, ((x, y, z),))
        phi = phi_from_geometry(single)
        if not check_opening(single):
            return TrialOutcome(ok=False, detail=f"θ={theta:.9f}, v=({x:.6f}, {y:.6f}, {z:.6f}): φ={phi:.12f} is not in (θ, π]")

        closed = phi_closed_form(theta, x, y, z)
        gap = abs(closed - phi)
        if gap > AGREEMENT:
            return TrialOutcome(ok=False, detail=f"Closed form {closed!r} vs fan sum {phi!r}")
        if not check_monotonic(theta, x, y, Z_GRID):
            return TrialOutcome(ok=False, detail=f"φ(z) decreases for θ={theta!r}, v=({x!r}, {y!r})")

        phi1, phi1_mirror = reflection_identity(single)
        if abs(phi1 + phi1_mirror - 2 * math.pi) > AGREEMENT:
            return TrialOutcome(ok=False, detail=f"Mirrored fans sum to {phi1 + phi1_mirror!r}")

        # several lifted points on the unit circle keep the chain convex; the π bound is only measured
        k = int(rng.integers(2, 5))
        sweeps = np.sort(rng.uniform(0.05 * theta, 0.95 * theta, size=k))
        fan = VertexOpeningConfig(a, b, c, tuple((*_on_sweep(float(s)), z) for s in sweeps))
        phi_fan = phi_from_geometry(fan)
        if not phi_fan > theta or spherical_path_length(fan) < theta - AGREEMENT:
            return TrialOutcome(ok=False, detail=f"θ={theta:.9f}, k={k}, z={z:.6f}: fan of φ={phi_fan:.12f} does not open")

        measurements: Dict[str, Any] = {"closed-form gap": gap, "fan past π": phi_fan > math.pi}
        return TrialOutcome(margin=min(phi - theta, math.pi - phi), measurements=measurements)

    def fixed_checks(self, ctx: SuiteContext) -> List[CheckOutcome]:
        checks = []
        theta = 2 * math.pi / 3

        flat = phi_closed_form(theta, 0.0, 1.0, 0.0)
        checks.append(CheckOutcome("flat-lift-keeps-angle", abs(flat - theta) <= 1e-9, f"φ(0) = {flat!r}"))

        tall = phi_closed_form(theta, 0.0, 1.0, 1e6)
        checks.append(CheckOutcome("tall-lift-approaches-pi", abs(tall - math.pi) <= 1e-5, f"φ(1e6) = {tall!r}"))

        a, b, c = _hinge(theta)
        cfg = VertexOpeningConfig(a, b, c, ((0.0, 1.0, 1.0),))
        gap = abs(phi_from_geometry(cfg) - phi_closed_form(theta, 0.0, 1.0, 1.0))
        checks.append(CheckOutcome("closed-form-matches-fan", gap <= 1e-12, f"gap {gap:.3e}"))

        phi1, phi1_mirror = reflection_identity(cfg)
        total = phi1 + phi1_mirror
        checks.append(CheckOutcome("mirrored-lifts-complement", abs(total - 2 * math.pi) <= 1e-12, f"sum {total!r}"))

        on_ray = VertexOpeningConfig(a, b, c, ((0.0, 1.0, 0.0),))
        checks.append(CheckOutcome("no-strict-opening-when-flat", not check_opening(on_ray), "z = 0 reported as opening"))

        # printed derivative is only compared, never trusted
        agree = total_cases = 0
        for z in np.linspace(0.05, 5.0, 40):
            numeric = phi_derivative_numeric(theta, 0.3, 0.8, float(z))
            if abs(numeric) > 1e-8:
                total_cases += 1
                agree += math.copysign(1, phi_derivative_printed(theta, 0.3, 0.8, float(z))) == math.copysign(1, numeric)
        checks.append(
            CheckOutcome("printed-derivative-sign", True, measurements={"agreeing samples": f"{agree}/{total_cases}"})
        )
        return checks

    def summarize(self, outcomes: List[TrialOutcome]) -> Dict[str, Any]:
        gaps = [o.measurements["closed-form gap"] for o in outcomes if "closed-form gap" in o.measurements]
        if not gaps:
            return {}
        past = sum(1 for o in outcomes if o.measurements.get("fan past π"))
        return {"max closed-form gap": max(gaps), "fans opened past π": f"{past}/{len(gaps)}"}
