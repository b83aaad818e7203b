"""
Documents Suite

Prismatoid documents must survive a write and re-read unchanged, malformed
documents must be rejected as documents, and the SVG and CSV emitters must
be deterministic.
"""

from __future__ import annotations

import math
from typing import Any, Dict, List, Optional

import json5
import numpy as np

from helper.band import build_band
from helper.documents import PrismatoidDocument, parse_polygon, parse_prismatoid
from helper.errors import DocumentError, GeometryError, NestingViolation, PlacementFailure
from helper.generator import random_nested_prismatoid
from helper.plugin_loader import CheckOutcome, Plugin, SuiteContext, TrialOutcome
from helper.render import emit_phi_csv, render_layout, to_svg
from helper.unfolder import develop_band
from helper.utils import format_json

ROUND_TRIP = 1e-12

_MALFORMED = {
    "too-few-vertices": {"B": [[0, 0], [1, 0]], "A": [[0.1, 0.1], [0.2, 0.1], [0.1, 0.2]], "z": 1},
    "missing-height": {"B": [[0, 0], [1, 0], [0, 1]], "A": [[0.1, 0.1], [0.2, 0.1], [0.1, 0.2]]},
    "negative-height": {"B": [[0, 0], [1, 0], [0, 1]], "A": [[0.1, 0.1], [0.2, 0.1], [0.1, 0.2]], "z": -1},
    "unknown-key": {"B": [[0, 0], [1, 0], [0, 1]], "A": [[0.1, 0.1], [0.2, 0.1], [0.1, 0.2]], "z": 1, "C": []},
    "not-a-point": {"B": [[0, 0, 0], [1, 0], [0, 1]], "A": [[0.1, 0.1], [0.2, 0.1], [0.1, 0.2]], "z": 1},
}


class DocumentsPlugin(Plugin):
    """Suite for document I/O and emitters"""

    def get_name(self) -> str:
        return "documents"

    def get_priority(self) -> Optional[int]:
        return None  # Use filename prefix (800)

    def get_plugin_type(self) -> str:
        return "suite"

    def run_trial(self, seed: int, ctx: SuiteContext) -> TrialOutcome:
        rng = np.random.default_rng(seed)
        n_b, n_a = (int(v) for v in rng.integers(3, 17, size=2))
        z = float(rng.uniform(0.0, 5.0))
        try:
            p = random_nested_prismatoid(n_b, n_a, z, seed=seed)
        except PlacementFailure:
            return TrialOutcome(applicable=False)

        doc = PrismatoidDocument.from_prismatoid(p, metadata={"seed": seed})
        text = format_json(doc.to_data())
        again = parse_prismatoid(json5.loads(text))
        q = again.to_prismatoid()

        drift = max(
            float(np.abs(q.B.array - p.B.array).max()),
            float(np.abs(q.A.array - p.A.array).max()),
            abs(q.z - p.z),
        )
        if drift > ROUND_TRIP:
            return TrialOutcome(ok=False, detail=f"Round trip moved a coordinate by {drift:.3e}")
        if again.metadata != {"seed": seed}:
            return TrialOutcome(ok=False, detail=f"Metadata changed to {again.metadata}")
        if format_json(again.to_data()) != text:
            return TrialOutcome(ok=False, detail="Re-serialized document differs")

        top = parse_polygon({"polygon": [list(v) for v in p.A.vertices]})
        if top != p.A:
            return TrialOutcome(ok=False, detail="Polygon document did not reproduce the top")

        return TrialOutcome(margin=ROUND_TRIP - drift)

    def fixed_checks(self, ctx: SuiteContext) -> List[CheckOutcome]:
        checks = []

        accepted = []
        for name, data in _MALFORMED.items():
            try:
                parse_prismatoid(data)
                accepted.append(name)
            except DocumentError:
                pass
        checks.append(CheckOutcome("malformed-documents-rejected", not accepted, f"accepted: {accepted}" if accepted else ""))

        outside = {"B": [[0, 0], [1, 0], [0, 1]], "A": [[0.1, 0.1], [2.0, 0.1], [0.1, 0.2]], "z": 1}
        try:
            parse_prismatoid(outside).to_prismatoid()
            checks.append(CheckOutcome("invalid-geometry-is-geometric", False, "top outside the base was accepted"))
        except DocumentError as e:
            checks.append(CheckOutcome("invalid-geometry-is-geometric", False, f"reported as a document error: {e.message}"))
        except NestingViolation:
            checks.append(CheckOutcome("invalid-geometry-is-geometric", True))
        except GeometryError as e:
            checks.append(CheckOutcome("invalid-geometry-is-geometric", False, f"unexpected {type(e).__name__}"))

        theta = 2 * math.pi / 3
        rows = emit_phi_csv(theta, 0.0, 1.0, np.arange(0.0, 5.0 + 1e-9, 0.05))
        phis = [phi for _, phi in rows]
        csv_ok = abs(phis[0] - 2.0944) <= 1e-4 and all(b >= a - 1e-12 for a, b in zip(phis, phis[1:]))
        checks.append(CheckOutcome("phi-table", csv_ok, f"{len(rows)} rows from {phis[0]!r} to {phis[-1]!r}"))

        p = random_nested_prismatoid(6, 5, 0.2, seed=ctx.seed)
        layout = develop_band(p, build_band(p), 0)
        first, second = render_layout(layout), render_layout(layout)
        checks.append(CheckOutcome("svg-deterministic", first == second and first.startswith("<svg"), "renders differ"))

        empty = to_svg([])
        checks.append(CheckOutcome("svg-empty-canvas", 'viewBox="-1 -1 2 2"' in empty, "empty scene has no default viewBox"))
        return checks

    def summarize(self, outcomes: List[TrialOutcome]) -> Dict[str, Any]:
        return {"documents round-tripped": sum(1 for o in outcomes if o.applicable)}
