"""Shared fixtures: repository root on sys.path, the CLI module, clean globals"""

import importlib.util
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from helper.constants import DEFAULT_TOLERANCE  # noqa: E402
from helper.documents import PrismatoidDocument  # noqa: E402
from helper.geometry import set_tolerance  # noqa: E402
from helper.logging import LogLevel, set_log_level  # noqa: E402
from helper.utils import format_json  # noqa: E402


def _load_cli():
    spec = importlib.util.spec_from_file_location("prismatoid_band_tools", ROOT / "prismatoid-band-tools.py")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.fixture(scope="session")
def cli():
    return _load_cli()


@pytest.fixture(autouse=True)
def _clean_globals(monkeypatch):
    monkeypatch.delenv("PRISMATOID_TOOLS_TOLERANCE", raising=False)
    monkeypatch.delenv("PRISMATOID_TOOLS_SEED", raising=False)
    monkeypatch.delenv("PRISMATOID_TOOLS_LOG_LEVEL", raising=False)
    yield
    set_tolerance(DEFAULT_TOLERANCE)
    set_log_level(LogLevel.INFO)


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """Empty working directory so no stray config file is picked up"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOME", str(tmp_path))
    return tmp_path


@pytest.fixture
def square_in_square():
    """Unit-ish square base with a smaller rotated square top"""
    return {
        "B": [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
        "A": [[0.5, 0.3], [0.7, 0.5], [0.5, 0.7], [0.3, 0.5]],
        "z": 0.2,
    }


@pytest.fixture
def square_prismatoid(square_in_square):
    return PrismatoidDocument.model_validate(square_in_square).to_prismatoid()


@pytest.fixture
def write_doc(workdir):
    def _write(name, data):
        path = workdir / name
        path.write_text(format_json(data) + "\n")
        return path

    return _write
