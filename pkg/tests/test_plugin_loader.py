import textwrap

from helper.constants import REQUIRED_SUITES
from helper.plugin_loader import discover_suites, extract_numeric_prefix, load_suites

SUITE_TEMPLATE = """
from helper.plugin_loader import Plugin, TrialOutcome


class {cls}(Plugin):
    def get_name(self):
        return "{name}"

    def get_priority(self):
        return {priority}

    def run_trial(self, seed, ctx):
        return TrialOutcome(ok=seed % 2 == 0, margin=float(seed))
"""


def write_suite(directory, filename, name, priority=None):
    cls = name.capitalize() + "Plugin"
    (directory / filename).write_text(textwrap.dedent(SUITE_TEMPLATE.format(cls=cls, name=name, priority=priority)))


def test_extract_numeric_prefix():
    assert extract_numeric_prefix("300_opening_plugin.py") == 300
    assert extract_numeric_prefix("opening_plugin.py") == 999


def test_built_in_suites_are_discovered():
    found = {record["name"]: record for record in discover_suites()}
    assert set(REQUIRED_SUITES) <= set(found)
    assert found["geometry"]["priority"] == 100
    assert found["documents"]["filename"] == "800_documents_plugin.py"
    assert all(record["type"] == "suite" for record in found.values())


def test_ordering_and_filters(tmp_path):
    write_suite(tmp_path, "100_alpha_plugin.py", "alpha")
    write_suite(tmp_path, "200_beta_plugin.py", "beta", priority=50)
    write_suite(tmp_path, "300_gamma_plugin.py", "gamma")
    (tmp_path / "400_broken_plugin.py").write_text("raise RuntimeError('boom')\n")
    (tmp_path / "notes.py").write_text("x = 1\n")

    suites = load_suites(plugins_dir=tmp_path, quiet=True)
    assert [s.get_name() for s in suites["active"]] == ["beta", "alpha", "gamma"]
    assert suites["available"] == ["alpha", "beta", "gamma"]

    config = {"suites": {"disabled": ["alpha"], "order": ["gamma"]}}
    suites = load_suites(config, plugins_dir=tmp_path, quiet=True)
    assert [s.get_name() for s in suites["active"]] == ["gamma", "beta"]
    assert suites["disabled"] == ["alpha"]

    suites = load_suites(config, selected=["alpha", "nope"], plugins_dir=tmp_path, quiet=True)
    assert [s.get_name() for s in suites["active"]] == ["alpha"]
    assert suites["disabled"] == ["beta", "gamma"]


def test_missing_directory(tmp_path):
    assert discover_suites(tmp_path / "absent") == []
