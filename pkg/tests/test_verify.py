from helper.constants import REQUIRED_SUITES
from helper.errors import PlacementFailure
from helper.exit_codes import PLACEMENT_FAILURE
from helper.plugin_loader import CheckOutcome, Plugin, SuiteContext, TrialOutcome, load_suites
from helper.utils import trial_seed
from helper.verify import print_report, run_suite, run_verification

CTX = SuiteContext(trials=6, seed=7, tolerance=1e-9, z_sweep=(0.1, 0.2), workers=1)


class EvenSeedPlugin(Plugin):
    def get_name(self):
        return "even"

    def run_trial(self, seed, ctx):
        if seed % 3 == 0:
            return TrialOutcome(applicable=False)
        if seed % 2:
            raise ValueError("odd seed")
        return TrialOutcome(margin=seed / 2**32)

    def fixed_checks(self, ctx):
        return [CheckOutcome("constant", True, measurements={"value": 1})]


class AlwaysPlugin(Plugin):
    def get_name(self):
        return "always"

    def trial_count(self, ctx):
        return 3

    def run_trial(self, seed, ctx):
        return TrialOutcome(margin=1.0)

    def fixed_checks(self, ctx):
        return [CheckOutcome("example", False, detail="example failed")]

    def summarize(self, outcomes):
        return {"count": len(outcomes)}


def test_failures_keep_their_seeds():
    result = run_suite(EvenSeedPlugin(), CTX)
    seeds = [trial_seed(7, "even", i) for i in range(6)]
    failing = [s for s in seeds if s % 3 and s % 2]
    assert result.trials == 6
    assert [f.seed for f in result.failures] == failing
    assert all("ValueError: odd seed" == f.detail for f in result.failures)
    assert result.applicable == sum(1 for s in seeds if s % 3)
    assert result.measurements == {"constant": {"value": 1}}
    assert result.status == ("failed" if failing else "passed")


def test_replay_runs_one_seed_without_fixed_checks():
    result = run_suite(AlwaysPlugin(), CTX, replay_seed=12345)
    assert result.trials == 1
    assert result.status == "passed"
    assert result.measurements == {"count": 1}

    full = run_suite(AlwaysPlugin(), CTX)
    assert full.trials == 3
    assert full.failures[0].check == "example"
    assert full.worst_margin == 1.0


def test_missing_and_skipped_suites():
    suites = {"active": [AlwaysPlugin()], "disabled": ["even"], "available": ["always", "even"]}
    report = run_verification(suites, CTX, selected=["always"], show_progress=False)
    by_name = {s.name: s for s in report.suites}
    assert by_name["even"].status == "skipped"
    assert by_name["even"].measurements["reason"] == "not selected"
    for name in REQUIRED_SUITES:
        assert by_name[name].status == "missing"
    assert not report.passed
    print_report(report)


def test_built_in_suites_pass_a_short_run(workdir):
    ctx = SuiteContext(trials=2, seed=7, tolerance=1e-9, z_sweep=(0.05, 0.2, 1.0), workers=1)
    suites = load_suites(selected=["geometry", "rotations", "documents"], quiet=True)
    report = run_verification(suites, ctx, selected=["geometry", "rotations", "documents"], show_progress=False)
    ran = [s for s in report.suites if s.status not in ("skipped", "missing")]
    assert [s.name for s in ran] == ["geometry", "rotations", "documents"]
    assert all(s.status == "passed" for s in ran), report.failures()


class CrashingChecksPlugin(Plugin):
    def get_name(self):
        return "crashing"

    def trial_count(self, ctx):
        return 2

    def run_trial(self, seed, ctx):
        return TrialOutcome(margin=0.5)

    def fixed_checks(self, ctx):
        raise PlacementFailure("Could not shrink the 3-gon inside itself")


def test_crashing_fixed_checks_are_recorded():
    result = run_suite(CrashingChecksPlugin(), CTX)
    assert result.trials == 2
    assert result.status == "failed"
    assert [f.check for f in result.failures] == ["fixed-checks"]
    assert result.failures[0].detail.startswith(f"PlacementFailure [E{PLACEMENT_FAILURE}]")
    assert result.worst_margin == 0.5


def _suite(name):
    return load_suites(selected=[name], quiet=True)["active"][0]


def test_opening_suite_measures_fans_past_pi(workdir):
    opening = _suite("opening")
    ctx = SuiteContext(trials=40, seed=7, tolerance=1e-9, z_sweep=(0.2,), workers=1)
    replay = run_suite(opening, ctx, replay_seed=2740725618)
    assert replay.status == "passed", replay.failures
    result = run_suite(opening, ctx)
    assert result.status == "passed", result.failures
    assert result.applicable == 40
    past, total = result.measurements["fans opened past π"].split("/")
    assert int(total) == 40 and 0 <= int(past) <= 40


def test_radial_suite_plants_acute_joints_in_long_chains(workdir):
    result = run_suite(_suite("radial"), SuiteContext(trials=30, seed=7, tolerance=1e-9, z_sweep=(0.2,), workers=1))
    assert result.status == "passed", result.failures


def test_unfolder_fixed_checks(workdir):
    checks = {c.name: c for c in _suite("unfolder").fixed_checks(CTX)}
    assert checks["prismoids-have-safe-cuts"].ok, checks["prismoids-have-safe-cuts"].detail
    assert checks["flat-all-cuts-safe"].ok, checks["flat-all-cuts-safe"].detail
    near = checks["near-flat-cuts"]
    assert near.ok
    assert near.measurements["safe"] + near.measurements["marginal"] <= near.measurements["lateral edges"]
    assert "figure-instance" in checks


def test_unfolder_trial_always_unfolds_an_instance(workdir):
    ctx = SuiteContext(trials=5, seed=7, tolerance=1e-9, z_sweep=(0.05, 0.2, 1.0), workers=1)
    result = run_suite(_suite("unfolder"), ctx, replay_seed=trial_seed(7, "unfolder", 0))
    assert result.trials == 1
    assert result.status == "passed", result.failures
    assert result.measurements["unfolded"] == 1


def test_figure_instance_fails_when_nothing_can_be_placed(workdir, monkeypatch):
    unfolder = _suite("unfolder")

    def no_room(*args, **kwargs):
        raise PlacementFailure("no room")

    monkeypatch.setitem(type(unfolder)._figure_instance.__globals__, "random_nested_prismatoid", no_room)
    check = unfolder._figure_instance(CTX)
    assert check.name == "figure-instance"
    assert not check.ok
    assert "100 seeds" in check.detail
