"""
Command implementations for prismatoid-band-tools

Each *_command takes the parsed arguments plus resolved settings and returns
a detail exit code; the entry script collapses it with to_process_exit().
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .band import NestedPrismatoid, build_band
from .config import Settings, parse_z_sweep
from .documents import PrismatoidDocument, load_polygon, load_prismatoid
from .errors import GeometryError, InvalidParameter, PlacementFailure, PreconditionViolation, UnverifiedWitness
from .exit_codes import (
    NO_RM_PROPERTY,
    OVERLAP_FOUND,
    SUCCESS,
    USAGE_ERROR,
    VERIFICATION_FAILED,
)
from .generator import GenConfig, random_convex_polygon, random_nested_prismatoid
from .geometry import PolyChain
from .logging import create_progress_context, log_debug, log_error, log_info, log_success, log_warning
from .plugin_loader import discover_suites
from .radial import (
    RmWitness,
    boundary_paths,
    find_crossing_opening,
    find_rm_property,
    involute_of,
    open_chain,
    witness_margin,
)
from .render import (
    emit_phi_csv,
    grid_shapes,
    involute_shapes,
    layout_shapes,
    opening_shapes,
    polygon_shapes,
    prismatoid_shapes,
    render_layout,
    render_phi_plot,
    render_polygon,
    row_shapes,
    to_svg,
    write_phi_csv,
    write_svg,
)
from .unfolder import Layout, LayoutVerdict, check_layout, choose_witness, find_safe_cuts, plan_unfold, unfold, unfold_with_fallback, z_sweep
from .utils import trial_seed, write_json
from .verify import print_report, run_verification

FIGURE_ATTEMPTS = 100
RM_FIGURE_COUNT = 40


def _report(e: GeometryError) -> int:
    log_error(e.message, code=e.code)
    return e.code


def _to_stdout(path: Optional[str]) -> bool:
    return path is None or str(path) == "-"


def _parse_witness(text: str, n: int) -> RmWitness:
    """"EDGE,APEX" as typed on the command line"""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
        raise InvalidParameter(f"--witness expects EDGE,APEX, got {text!r}")
    edge, apex = (int(p) for p in parts)
    if not (0 <= edge < n and 0 <= apex < n):
        raise InvalidParameter(f"--witness indices must lie in 0..{n - 1}, got {text!r}")
    return RmWitness(edge, apex, n)


def _verdict_dict(verdict: LayoutVerdict) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "nonoverlapping": verdict.nonoverlapping,
        "worstArea": verdict.worst_area,
        "threshold": verdict.threshold,
        "marginal": verdict.marginal,
    }
    if verdict.worst_pair is not None:
        data["worstPair"] = list(verdict.worst_pair)
    if verdict.overlap is not None:
        data["overlap"] = {
            "faces": [verdict.overlap.face_a, verdict.overlap.face_b],
            "area": verdict.overlap.area,
            "marginal": verdict.overlap.marginal,
        }
    return data


def _describe(verdict: LayoutVerdict, z: float) -> None:
    if verdict.nonoverlapping:
        note = " (marginal)" if verdict.marginal else ""
        log_success(f"z={z}: no overlap{note}, worst area {verdict.worst_area:.3e} below {verdict.threshold:.3e}")
    else:
        o = verdict.overlap
        note = " (marginal)" if o.marginal else ""
        log_error(f"z={z}: {o.face_a} overlaps {o.face_b} by area {o.area:.3e}{note}", code=OVERLAP_FOUND)


# =============================================================================
# gen
# =============================================================================


def gen_command(args, settings: Settings) -> int:
    """Generate a random nested prismatoid document

    Args:
        args: Parsed arguments (n_b, n_a, z, prismoid, out)
        settings: Resolved settings (seed)
    """
    try:
        cfg = GenConfig(n_b=args.n_b, n_a=args.n_a, z=args.z, seed=settings.seed, prismoid=args.prismoid)
        p = cfg.generate()
        doc = PrismatoidDocument.from_prismatoid(p, metadata=cfg.to_dict())
        write_json(Path(args.out) if not _to_stdout(args.out) else "-", doc.to_data())
        if not _to_stdout(args.out):
            log_success(f"Wrote {p.B.n}/{p.A.n} prismatoid (z={p.z}, seed {cfg.seed}) to {args.out}")
        return SUCCESS
    except GeometryError as e:
        return _report(e)


# =============================================================================
# unfold / safe-cuts
# =============================================================================


def _load_instance(args) -> NestedPrismatoid:
    p, _ = load_prismatoid(args.input or "-")
    if getattr(args, "z", None) is not None:
        p = p.with_height(args.z)
    return p


def unfold_command(args, settings: Settings) -> int:
    """Band-unfold one prismatoid and report whether the layout overlaps

    Args:
        args: Parsed arguments (input, z, cut, attach_b, witness, z_sweep, svg, json)
        settings: Resolved settings (svg size)

    Returns:
        SUCCESS, OVERLAP_FOUND, or the code of the geometric error
    """
    try:
        p = _load_instance(args)
        band = build_band(p)
        log_info(f"=== Unfolding {p.B.n}/{p.A.n} prismatoid at z={p.z} ===")

        witness = _parse_witness(args.witness, p.A.n) if args.witness else None
        plan = plan_unfold(p, band, witness=witness, cut=args.cut, attach_b=args.attach_b)
        rejected: List[int] = []
        if args.attach_b is None:
            layout, plan, rejected = unfold_with_fallback(p, plan, band)
        else:
            layout = unfold(p, plan, band)
        log_info(f"Plan: cut L{plan.cut}, B on edge {plan.attach_b}, A on edge {plan.attach_a}")
        if rejected:
            log_warning(f"B overlapped the band from edge(s) {rejected}")

        verdict = check_layout(layout, p.eps)
        _describe(verdict, p.z)
        report: Dict[str, Any] = {"plan": plan.to_dict(), "verdict": _verdict_dict(verdict), "layout": layout.to_dict()}

        failed = not verdict.nonoverlapping
        if args.z_sweep:
            sweep = []
            for zv in z_sweep(p.B, p.A, plan, parse_z_sweep(args.z_sweep), p.eps):
                _describe(zv.verdict, zv.z)
                failed = failed or not zv.nonoverlapping
                sweep.append({"z": zv.z, "cutSafe": zv.cut_safe, "verdict": _verdict_dict(zv.verdict)})
            report["sweep"] = sweep

        if args.svg:
            write_svg(Path(args.svg), render_layout(layout, verdict.overlap, settings.svg_size))
            log_info(f"SVG written to {args.svg}")
        if args.json:
            write_json(Path(args.json) if args.json != "-" else "-", report)

        return OVERLAP_FOUND if failed else SUCCESS
    except GeometryError as e:
        return _report(e)


def safe_cuts_command(args, settings: Settings) -> int:
    """List lateral edges whose cut leaves the developed band nonoverlapping"""
    try:
        p = _load_instance(args)
        band = build_band(p)
        heights = parse_z_sweep(args.z_sweep) if args.z_sweep else (p.z,)
        per_height = {z: find_safe_cuts(p.with_height(z)) for z in heights}
        common = sorted(set.intersection(*(set(v) for v in per_height.values())))

        log_info(f"=== Safe cuts of {band.n_lateral} lateral edges ===")
        for z, cuts in per_height.items():
            log_info(f"z={z}: {len(cuts)} safe: {cuts}")
        if not common:
            log_warning("No lateral edge is a safe cut at every height")

        if args.json:
            write_json(
                Path(args.json) if args.json != "-" else "-",
                {
                    "lateralEdges": band.n_lateral,
                    "heights": [{"z": z, "safeCuts": cuts} for z, cuts in per_height.items()],
                    "safeAtEveryHeight": common,
                },
            )
        return SUCCESS
    except GeometryError as e:
        return _report(e)


# =============================================================================
# rm-check
# =============================================================================


def rm_check_command(args, settings: Settings) -> int:
    """Search a polygon for RM-property witnesses

    Returns:
        SUCCESS when a witness exists, NO_RM_PROPERTY otherwise
    """
    try:
        poly = load_polygon(args.input or "-")
        witnesses = find_rm_property(poly)
        best = choose_witness(poly, witnesses)

        log_info(f"=== RM-property of {poly.n}-gon ===")
        if best is None:
            log_error("Polygon lacks the RM-property", code=NO_RM_PROPERTY)
        else:
            log_success(f"{len(witnesses)} witness(es); best: edge {best.edge} with apex {best.apex}")

        if args.json:
            write_json(
                Path(args.json) if args.json != "-" else "-",
                {
                    "n": poly.n,
                    "witnesses": [
                        {"edge": w.edge, "apex": w.apex, "margin": witness_margin(poly, w)} for w in witnesses
                    ],
                    "best": None if best is None else {"edge": best.edge, "apex": best.apex},
                },
            )
        if args.svg:
            write_svg(Path(args.svg), render_polygon(poly, best, settings.svg_size))
            log_info(f"SVG written to {args.svg}")
        return SUCCESS if best is not None else NO_RM_PROPERTY
    except GeometryError as e:
        return _report(e)


# =============================================================================
# phi
# =============================================================================


def _phi_grid(z_max: float, z_step: float) -> np.ndarray:
    if z_step <= 0 or z_max < 0:
        raise InvalidParameter(f"Need z_max >= 0 and z_step > 0, got {z_max} and {z_step}")
    count = int(math.floor(z_max / z_step + 1e-9)) + 1
    return np.round(np.arange(count) * z_step, 12)


def phi_command(args, settings: Settings) -> int:
    """Tabulate φ(z) from the closed form; CSV to --csv (stdout by default)"""
    try:
        theta = math.radians(args.theta)
        rows = emit_phi_csv(theta, args.x, args.y, _phi_grid(args.z_max, args.z_step))
        write_phi_csv(args.csv or "-", rows)
        if args.svg:
            write_svg(Path(args.svg), render_phi_plot(rows, theta, settings.svg_size))
        summary = f"{len(rows)} rows, φ from {rows[0][1]:.6f} to {rows[-1][1]:.6f}"
        if _to_stdout(args.csv):
            log_debug(summary)
        else:
            log_success(f"{summary} written to {args.csv}")
        return SUCCESS
    except GeometryError as e:
        return _report(e)


# =============================================================================
# verify / list-suites
# =============================================================================


def verify_command(args, settings: Settings, suites: Dict[str, Any]) -> int:
    """Run the verification suites and print the report

    Args:
        args: Parsed arguments (suite, replay_seed, json, quiet)
        settings: Resolved settings (trials, seed, tolerance, zSweep, workers)
        suites: Output of load_suites()
    """
    report = run_verification(
        suites,
        settings.suite_context(),
        replay_seed=args.replay_seed,
        selected=args.suite or None,
        show_progress=not args.quiet,
    )
    print_report(report)
    if args.json:
        write_json(Path(args.json) if args.json != "-" else "-", report.model_dump())

    if report.passed:
        log_success(f"All {sum(1 for s in report.suites if s.status == 'passed')} suite(s) passed")
        return SUCCESS
    failures = report.failures()
    log_error(f"Verification failed with {len(failures)} failure(s)", code=VERIFICATION_FAILED)
    for name, f in failures:
        if f.seed is not None:
            log_info(f"  replay: verify --suite {name} --replay-seed {f.seed}")
    return VERIFICATION_FAILED


def list_suites_command(suites: Dict[str, Any]) -> int:
    """List every discovered suite and whether it would run"""
    active = [s.get_name() for s in suites["active"]]
    log_info("=== Verification suites ===")
    for info in discover_suites():
        state = "active" if info["name"] in active else "disabled"
        log_info(f"  {info['priority']:>4}  {info['name']:<12} {state:<9} {info['filename']}")
    return SUCCESS


# =============================================================================
# figures
# =============================================================================


def _planned_instance(n_b: int, n_a: int, z: float, seed: int, label: str) -> Tuple[NestedPrismatoid, Any]:
    """First seeded instance whose top has a witness and a safe compatible cut

    Raises:
        PreconditionViolation: If none of FIGURE_ATTEMPTS seeds qualifies
    """
    for s in range(FIGURE_ATTEMPTS):
        try:
            p = random_nested_prismatoid(n_b, n_a, z, seed=trial_seed(seed, label, s))
            return p, plan_unfold(p)
        except (PlacementFailure, UnverifiedWitness, PreconditionViolation) as e:
            log_debug(f"{label} attempt {s}: {e.message}")
    raise PreconditionViolation(f"No {n_b}/{n_a} instance for {label} in {FIGURE_ATTEMPTS} seeds")


def _unfolded(p: NestedPrismatoid) -> Tuple[Layout, LayoutVerdict]:
    layout, _, _ = unfold_with_fallback(p, plan_unfold(p))
    verdict = check_layout(layout, p.eps)
    _describe(verdict, p.z)
    return layout, verdict


def _figure_unfoldings(out: Path, settings: Settings) -> bool:
    seed = settings.seed
    ok = True

    p, _ = _planned_instance(14, 16, 0.2, seed, "figure-example")
    layout, verdict = _unfolded(p)
    ok &= verdict.nonoverlapping
    shapes = row_shapes([prismatoid_shapes(p.B, p.A), layout_shapes(layout, verdict.overlap)])
    write_svg(out / "example_3d_ab.svg", to_svg(shapes, settings.svg_size, title="n_B, n_A = 14, 16; z = 0.2"))

    groups = []
    for z in (1.0, 2.0, 3.0):
        try:
            layout, verdict = _unfolded(p.with_height(z))
        except PreconditionViolation as e:
            log_warning(f"Skipping z={z}: {e.message}")
            continue
        ok &= verdict.nonoverlapping
        groups.append(layout_shapes(layout, verdict.overlap))
    write_svg(out / "examples_z123.svg", to_svg(row_shapes(groups), settings.svg_size, title="z = 1, 2, 3"))

    groups = []
    for n_a in (6, 5):
        q, _ = _planned_instance(10, n_a, 0.2, seed, f"figure-z02-{n_a}")
        layout, verdict = _unfolded(q)
        ok &= verdict.nonoverlapping
        groups.append(layout_shapes(layout, verdict.overlap))
    write_svg(out / "examples_z02_ab.svg", to_svg(row_shapes(groups), settings.svg_size, title="z = 0.2; n_A = 6, 5"))
    return bool(ok)


def _figure_rm_examples(out: Path, settings: Settings) -> None:
    cells = []
    tried = 0
    while len(cells) < RM_FIGURE_COUNT and tried < 50 * RM_FIGURE_COUNT:
        gen = np.random.default_rng(trial_seed(settings.seed, "figure-rm", tried))
        tried += 1
        poly = random_convex_polygon(int(gen.integers(8, 13)), rng=gen)
        best = choose_witness(poly, find_rm_property(poly))
        if best is not None:
            cells.append(polygon_shapes(poly, best))
    log_info(f"RM-property in {len(cells)}/{tried} random polygons")
    write_svg(out / "rm_property_examples.svg", to_svg(grid_shapes(cells), settings.svg_size))


def _figure_phi(out: Path, settings: Settings) -> None:
    theta = math.radians(120.0)
    rows = emit_phi_csv(theta, 0.0, 1.0, _phi_grid(5.0, 0.05))
    write_phi_csv(out / "plot_phi.csv", rows)
    write_svg(out / "plot_phi.svg", render_phi_plot(rows, theta, settings.svg_size))


def _figure_involute(out: Path, settings: Settings) -> None:
    poly = random_convex_polygon(20, seed=trial_seed(settings.seed, "figure-involute", 2))
    best = choose_witness(poly, find_rm_property(poly))
    edge, apex = (best.edge, best.apex) if best is not None else (0, poly.n // 2)
    chain = max(boundary_paths(poly, edge, apex), key=lambda c: c.n)
    room = [math.pi - a for a in chain.angles()]
    opened = open_chain(chain, [0.5 * r for r in room])
    write_svg(out / "involute.svg", to_svg(involute_shapes(chain, involute_of(chain), opened), settings.svg_size))


def _figure_rm_violation(out: Path, settings: Settings) -> None:
    arc = PolyChain(tuple((math.cos(-math.radians(d)), math.sin(-math.radians(d))) for d in range(0, 271, 15)))
    omegas = find_crossing_opening(arc)
    if omegas is None:
        log_warning("No crossing opening found for the long arc")
        shapes = opening_shapes(arc, arc)
    else:
        shapes = opening_shapes(arc, open_chain(arc, omegas))
    write_svg(out / "rm_violation.svg", to_svg(shapes, settings.svg_size, title="only ω1 > 0; every angle obtuse"))


def figures_command(args, settings: Settings) -> int:
    """Regenerate the example figures into --out

    Returns:
        SUCCESS, OVERLAP_FOUND if an example layout overlaps, or the code of
        the geometric error
    """
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        log_error(f"Cannot create {out}: {e}", code=USAGE_ERROR)
        return USAGE_ERROR

    steps = [
        ("band unfoldings", lambda: _figure_unfoldings(out, settings)),
        ("RM-property examples", lambda: _figure_rm_examples(out, settings)),
        ("phi plot", lambda: _figure_phi(out, settings)),
        ("involute", lambda: _figure_involute(out, settings)),
        ("RM violation", lambda: _figure_rm_violation(out, settings)),
    ]
    overlapped = False
    try:
        with create_progress_context(not args.quiet) as progress:
            task = progress.add_task("Figures", total=len(steps))
            for name, step in steps:
                log_debug(f"Figure: {name}")
                if step() is False:
                    overlapped = True
                progress.update(task, advance=1)
    except GeometryError as e:
        return _report(e)

    if overlapped:
        log_error("An example unfolding overlaps", code=OVERLAP_FOUND)
        return OVERLAP_FOUND
    log_success(f"Figures written to {out}")
    return SUCCESS
