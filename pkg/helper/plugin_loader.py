"""
Suite loading and management for prismatoid-band-tools

Handles discovery, loading, filtering, and ordering of verification suites.
"""

import importlib.util
import sys
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from .constants import DEFAULT_PLUGIN_PRIORITY
from .exit_codes import PLUGIN_LOAD_ERROR, PLUGIN_NOT_FOUND
from .logging import log_info, log_warning


@dataclass
class TrialOutcome:
    """Result of one randomized trial

    Attributes:
        ok: False records a failure (with the trial's seed)
        applicable: False when the sampled instance does not meet the
            property's hypothesis; such trials count but never fail
        margin: How far inside the property the trial landed (larger is safer)
        detail: Failure description
        measurements: Values that are reported, not asserted
    """

    ok: bool = True
    applicable: bool = True
    margin: Optional[float] = None
    detail: str = ""
    measurements: Dict[str, Any] = field(default_factory=dict)


@dataclass
class CheckOutcome:
    """Result of one fixed (non-random) check"""

    name: str
    ok: bool
    detail: str = ""
    measurements: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class SuiteContext:
    """Run-wide settings handed to every suite"""

    trials: int
    seed: int
    tolerance: float
    z_sweep: tuple
    workers: Optional[int] = None


class Plugin:
    """Base class for verification suites

    Suites must implement at minimum:
    - get_name(): Return suite name (one of REQUIRED_SUITES for built-ins)
    - run_trial(seed, ctx): Check the property on one instance drawn from seed

    Optional hooks:
    - trial_count(ctx): Trials to run (default: ctx.trials)
    - fixed_checks(ctx): Deterministic example checks, run once per verify
    - summarize(outcomes): Aggregate reported-only measurements
    """

    def get_name(self) -> str:
        """Return suite name"""
        raise NotImplementedError

    def get_priority(self) -> Optional[int]:
        """
        Return suite priority (lower = runs first).
        None means use filename prefix or default.
        """
        return None

    def get_plugin_type(self) -> str:
        return "suite"

    def trial_count(self, ctx: SuiteContext) -> int:
        return ctx.trials

    def run_trial(self, seed: int, ctx: SuiteContext) -> TrialOutcome:
        raise NotImplementedError

    def fixed_checks(self, ctx: SuiteContext) -> List[CheckOutcome]:
        return []

    def summarize(self, outcomes: List[TrialOutcome]) -> Dict[str, Any]:
        return {}


def extract_numeric_prefix(filename: str) -> int:
    """Extract numeric prefix from filename (e.g., '300_opening_plugin.py' -> 300)

    Args:
        filename: Suite filename

    Returns:
        Priority number from filename prefix, or DEFAULT_PLUGIN_PRIORITY if no prefix
    """
    match = re.match(r"(\d+)_", filename)
    return int(match.group(1)) if match else DEFAULT_PLUGIN_PRIORITY


def discover_suites(plugins_dir: Optional[Path] = None) -> List[Dict[str, Any]]:
    """Load every *_plugin.py file without filtering

    Returns:
        One record per suite: instance, name, type, priority, filename
    """
    plugins_dir = plugins_dir or Path(__file__).parent.parent / "plugins"
    if not plugins_dir.exists():
        return []

    loaded = []
    for plugin_file in sorted(plugins_dir.glob("*_plugin.py")):
        try:
            spec = importlib.util.spec_from_file_location(plugin_file.stem, plugin_file)
            if not (spec and spec.loader):
                continue
            module = importlib.util.module_from_spec(spec)
            sys.modules[spec.name] = module
            spec.loader.exec_module(module)

            # Find suite class (looks for class ending with "Plugin")
            for name in dir(module):
                obj = getattr(module, name)
                if isinstance(obj, type) and name.endswith("Plugin") and name not in ["Plugin"]:
                    instance = obj()
                    missing = [m for m in ("get_name", "run_trial") if not hasattr(instance, m)]
                    if missing:
                        log_warning(f"Suite {plugin_file.stem} missing required methods: {', '.join(missing)}", code=PLUGIN_LOAD_ERROR)
                        break

                    priority = instance.get_priority()
                    if priority is None:
                        priority = extract_numeric_prefix(plugin_file.name)

                    loaded.append(
                        {
                            "instance": instance,
                            "name": instance.get_name(),
                            "type": instance.get_plugin_type(),
                            "priority": priority,
                            "filename": plugin_file.name,
                        }
                    )
                    break  # Only load first Plugin class from each file

        except Exception as e:
            log_warning(f"Failed to load suite {plugin_file.name}: {e}", code=PLUGIN_LOAD_ERROR)
    return loaded


def load_suites(
    config: Optional[dict] = None,
    selected: Optional[List[str]] = None,
    quiet: bool = False,
    plugins_dir: Optional[Path] = None,
) -> Dict[str, Any]:
    """
    Load, filter and order suites.

    Priority resolution (lowest number = runs first):
    1. Config file explicit order
    2. Suite get_priority() method
    3. Filename numeric prefix (e.g., 300_opening_plugin.py)
    4. Default (999)

    Args:
        config: Configuration dictionary (uses its "suites" section)
        selected: Optional suite names from --suite; overrides enabled/disabled
        quiet: If True, suppress loading messages
        plugins_dir: Directory to scan (default: plugins/ at the repo root)

    Returns:
        {"active": [suite instances in run order],
         "disabled": [names filtered out by config or selection],
         "available": [all discovered names]}

    Notes:
        - Each file should contain exactly one class ending with "Plugin"
        - Warns about priority conflicts (same priority)
    """
    loaded = discover_suites(plugins_dir)
    names = [p["name"] for p in loaded]
    section = (config or {}).get("suites", {})

    active = set(names)
    if selected:
        unknown = set(selected) - active
        for name in sorted(unknown):
            log_warning(f"Unknown suite requested: {name}", code=PLUGIN_NOT_FOUND)
        active &= set(selected)
    else:
        if section.get("enabled"):
            active &= set(section["enabled"])
        if section.get("disabled"):
            active -= set(section["disabled"])

    filtered = [p for p in loaded if p["name"] in active]

    config_order = section.get("order", [])
    if config_order:
        ordered = []
        for suite_name in config_order:
            for p in filtered:
                if p["name"] == suite_name:
                    ordered.append(p)
                    break
        remaining = sorted((p for p in filtered if p not in ordered), key=lambda x: x["priority"])
        ordered.extend(remaining)
    else:
        ordered = sorted(filtered, key=lambda x: x["priority"])

    by_priority: Dict[int, List[str]] = {}
    for p in ordered:
        by_priority.setdefault(p["priority"], []).append(p["name"])
    for priority, clashing in by_priority.items():
        if len(clashing) > 1:
            log_warning(f"Priority conflict: {len(clashing)} suites with priority {priority}: {', '.join(clashing)}")

    for p in ordered:
        if not quiet:
            log_info(f"Loaded suite: {p['name']} (priority: {p['priority']})")

    return {
        "active": [p["instance"] for p in ordered],
        "disabled": [n for n in names if n not in active],
        "available": names,
    }
