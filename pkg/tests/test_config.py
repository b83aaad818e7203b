from argparse import Namespace

import pytest

from helper.config import default_config, parse_z_sweep, resolve_settings, validate_config
from helper.constants import CONFIG_FILENAME, DEFAULT_TOLERANCE, DEFAULT_Z_SWEEP
from helper.errors import InvalidParameter
from helper.exit_codes import CONFIG_ERROR, SUCCESS
from helper.geometry import get_tolerance
from helper.initialize import initialize_system, load_config


def test_defaults():
    settings = resolve_settings(default_config())
    assert settings.tolerance == DEFAULT_TOLERANCE
    assert settings.seed == 7
    assert settings.trials == 1000
    assert settings.z_sweep == tuple(DEFAULT_Z_SWEEP)
    assert settings.workers is None
    assert settings.svg_size == 800


def test_cli_beats_env_beats_config(monkeypatch):
    config = {"seed": 3, "tolerance": 1e-8}
    assert resolve_settings(config).seed == 3
    assert resolve_settings(config).sources["seed"] == "config file"

    monkeypatch.setenv("PRISMATOID_TOOLS_SEED", "5")
    monkeypatch.setenv("PRISMATOID_TOOLS_TOLERANCE", "1e-7")
    settings = resolve_settings(config)
    assert (settings.seed, settings.tolerance) == (5, 1e-7)
    assert settings.sources["tolerance"] == "env var (PRISMATOID_TOOLS_TOLERANCE)"

    settings = resolve_settings(config, Namespace(seed=11, tolerance=None, trials=3, z_sweep="0.1,0.4", workers=2))
    assert (settings.seed, settings.tolerance, settings.trials, settings.workers) == (11, 1e-7, 3, 2)
    assert settings.z_sweep == (0.1, 0.4)
    assert settings.sources["seed"] == "CLI arg"


@pytest.mark.parametrize(
    "config",
    [{"tolerance": 0}, {"tolerance": "fine"}, {"seed": -1}, {"seed": 1.5}, {"trials": 0}, {"workers": True}, {"svg": {"size": 8}}],
)
def test_bad_values_raise(config):
    with pytest.raises(InvalidParameter):
        resolve_settings(config)


def test_parse_z_sweep():
    assert parse_z_sweep("0.05, 0.1,0.2") == (0.05, 0.1, 0.2)
    assert parse_z_sweep([0, 1]) == (0.0, 1.0)
    for bad in ("", [], [0.2, 0.1], [0.1, 0.1], [-0.1, 1.0], ["x"], 0.5, [float("nan")]):
        with pytest.raises(InvalidParameter):
            parse_z_sweep(bad)


def test_suite_context_carries_settings():
    ctx = resolve_settings({"trials": 4, "seed": 9}).suite_context()
    assert (ctx.trials, ctx.seed) == (4, 9)


def test_validate_config():
    assert validate_config(default_config()) == SUCCESS
    assert validate_config({"tolerance": 1e-3, "unknown": 1}) == SUCCESS
    assert validate_config({"zSweep": [1.0, 0.5]}) == CONFIG_ERROR
    assert validate_config({"suites": {"enabled": [1]}}) == CONFIG_ERROR
    assert validate_config({"svg": []}) == CONFIG_ERROR


def test_load_config_from_working_directory(workdir):
    assert load_config()["_config_path"] is None
    (workdir / CONFIG_FILENAME).write_text("{\n  // JSON5 comments are fine\n  seed: 21,\n}\n")
    config = load_config()
    assert config["seed"] == 21
    assert config["_config_path"].endswith(CONFIG_FILENAME)


def test_unreadable_config_falls_back(workdir):
    (workdir / "broken.json").write_text("[1, 2]")
    assert load_config(str(workdir / "broken.json"))["_config_path"] is None
    assert load_config(str(workdir / "absent.json"))["_config_path"] is None


def test_initialize_sets_the_tolerance(workdir):
    config, settings, suites = initialize_system(Namespace(config=None, tolerance=1e-6, seed=None))
    assert suites is None
    assert settings.tolerance == 1e-6
    assert get_tolerance() == 1e-6
