"""
Verification harness

Runs every loaded suite's randomized trials (each with its own derived,
replayable seed) and fixed checks, and collects a VerificationReport.
Required suites that are missing fail the run; suites turned off by
configuration or selection are reported as skipped, never dropped.
"""

import time
from typing import Any, Dict, List, Optional

from .constants import REQUIRED_SUITES
from .documents import FailureRecord, SuiteResult, VerificationReport
from .errors import GeometryError
from .logging import create_progress_context, log_debug, log_error, log_info, log_success, log_warning
from .exit_codes import SUITE_MISSING, VERIFICATION_FAILED
from .plugin_loader import CheckOutcome, SuiteContext, TrialOutcome
from .utils import parallel_map, trial_seed


def _safe_trial(suite, seed: int, ctx: SuiteContext) -> TrialOutcome:
    try:
        return suite.run_trial(seed, ctx)
    except GeometryError as e:
        return TrialOutcome(ok=False, detail=f"{type(e).__name__}: {e.message}")
    except Exception as e:  # a crash is a failure of that trial, with its seed
        return TrialOutcome(ok=False, detail=f"{type(e).__name__}: {e}")


def _safe_checks(suite, ctx: SuiteContext) -> List[CheckOutcome]:
    try:
        return suite.fixed_checks(ctx)
    except GeometryError as e:
        return [CheckOutcome("fixed-checks", False, f"{type(e).__name__} [E{e.code}]: {e.message}")]
    except Exception as e:  # one broken check must not abort the whole run
        return [CheckOutcome("fixed-checks", False, f"{type(e).__name__}: {e}")]


def run_suite(suite, ctx: SuiteContext, replay_seed: Optional[int] = None, progress=None) -> SuiteResult:
    """Run one suite

    Args:
        suite: Loaded suite instance
        ctx: Run settings
        replay_seed: Run only this trial seed (fixed checks are skipped)
        progress: Optional rich Progress (or silent stand-in)

    Returns:
        SuiteResult with every failing seed recorded
    """
    name = suite.get_name()
    start = time.perf_counter()
    if replay_seed is not None:
        seeds = [int(replay_seed)]
    else:
        seeds = [trial_seed(ctx.seed, name, i) for i in range(suite.trial_count(ctx))]

    task = None
    if progress is not None and seeds:
        task = (progress, progress.add_task(f"{name}", total=len(seeds)))
    outcomes: List[TrialOutcome] = parallel_map(lambda s: _safe_trial(suite, s, ctx), seeds, ctx.workers, task)

    failures = [FailureRecord(seed=s, detail=o.detail) for s, o in zip(seeds, outcomes) if not o.ok]
    margins = [o.margin for o in outcomes if o.ok and o.applicable and o.margin is not None]

    measurements: Dict[str, Any] = {}
    if replay_seed is None:
        for check in _safe_checks(suite, ctx):
            if not check.ok:
                failures.append(FailureRecord(check=check.name, detail=check.detail))
            if check.measurements:
                measurements[check.name] = check.measurements
    measurements.update(suite.summarize(outcomes))

    result = SuiteResult(
        name=name,
        status="failed" if failures else "passed",
        trials=len(seeds),
        applicable=sum(1 for o in outcomes if o.applicable),
        failures=failures,
        worst_margin=min(margins) if margins else None,
        elapsed=time.perf_counter() - start,
        measurements=measurements,
    )
    log_debug(f"{name}: {result.trials} trials, {len(failures)} failure(s), {result.elapsed:.2f}s")
    return result


def run_verification(
    suites: Dict[str, Any],
    ctx: SuiteContext,
    replay_seed: Optional[int] = None,
    selected: Optional[List[str]] = None,
    show_progress: bool = True,
) -> VerificationReport:
    """Run all active suites and account for every required one

    Args:
        suites: Output of load_suites()
        ctx: Run settings
        replay_seed: Rerun a single recorded trial seed in each suite
        selected: Names given with --suite (others are reported as skipped)
        show_progress: Show a progress bar on terminals
    """
    report = VerificationReport(seed=ctx.seed, trials=ctx.trials, tolerance=ctx.tolerance)
    with create_progress_context(show_progress) as progress:
        for suite in suites["active"]:
            report.suites.append(run_suite(suite, ctx, replay_seed, progress))

    ran = {s.name for s in report.suites}
    for name in suites["disabled"]:
        if name not in ran:
            reason = "not selected" if selected else "disabled by configuration"
            log_warning(f"Suite {name} skipped ({reason})")
            report.suites.append(SuiteResult(name=name, status="skipped", measurements={"reason": reason}))

    available = set(suites["available"])
    for name in REQUIRED_SUITES:
        if name not in available:
            report.suites.append(
                SuiteResult(
                    name=name,
                    status="missing",
                    failures=[FailureRecord(detail=f"Required suite {name} was not found")],
                )
            )
    return report


def print_report(report: VerificationReport) -> None:
    log_info("=" * 70)
    log_info(f"VERIFICATION (seed {report.seed}, {report.trials} trials, ε = {report.tolerance:g})")
    log_info("=" * 70)
    for s in report.suites:
        margin = "-" if s.worst_margin is None else f"{s.worst_margin:.3e}"
        line = f"{s.name:<12} {s.status:<8} trials={s.trials:<6} applicable={s.applicable:<6} worst margin={margin:<10} {s.elapsed:.2f}s"
        if s.status == "passed":
            log_success(line)
        elif s.status == "skipped":
            log_warning(line)
        else:
            log_error(line, code=SUITE_MISSING if s.status == "missing" else VERIFICATION_FAILED)
        for key, value in s.measurements.items():
            log_info(f"    {key}: {value}")
        for f in s.failures[:10]:
            where = f"seed {f.seed}" if f.seed is not None else f"check {f.check}"
            log_error(f"    {where}: {f.detail}", code=VERIFICATION_FAILED)
        if len(s.failures) > 10:
            log_error(f"    ... and {len(s.failures) - 10} more", code=VERIFICATION_FAILED)
    log_info("=" * 70)
