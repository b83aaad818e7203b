"""
Configuration management for prismatoid-band-tools

Handles resolving and validating the .prismatoid-band-tools.json configuration file.
"""

import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from .constants import (
    DEFAULT_MAX_WORKERS,
    DEFAULT_SEED,
    DEFAULT_SVG_SIZE,
    DEFAULT_TOLERANCE,
    DEFAULT_TRIALS,
    DEFAULT_Z_SWEEP,
)
from .errors import InvalidParameter
from .exit_codes import CONFIG_ERROR, CONFIG_INVALID, SUCCESS
from .logging import LOG_LEVEL_ENV, LogLevel, get_log_level, log_error, log_info, log_success, log_warning
from .plugin_loader import SuiteContext

TOLERANCE_ENV = "PRISMATOID_TOOLS_TOLERANCE"
SEED_ENV = "PRISMATOID_TOOLS_SEED"

KNOWN_KEYS = {"tolerance", "seed", "trials", "zSweep", "workers", "suites", "svg", "_config_path"}


def default_config() -> dict:
    """Configuration used when no file is found"""
    return {
        "tolerance": DEFAULT_TOLERANCE,
        "seed": DEFAULT_SEED,
        "trials": DEFAULT_TRIALS,
        "zSweep": list(DEFAULT_Z_SWEEP),
        "workers": DEFAULT_MAX_WORKERS,
        "suites": {"enabled": [], "disabled": [], "order": []},
        "svg": {"size": DEFAULT_SVG_SIZE},
        "_config_path": None,
    }


def _get_value_source(cli_value, env_var_name, config_value, default_value):
    """Determine the source and effective value for a configuration item"""
    if cli_value is not None:
        return cli_value, "CLI arg"
    if env_var_name and os.environ.get(env_var_name):
        return os.environ.get(env_var_name), f"env var ({env_var_name})"
    if config_value is not None:
        return config_value, "config file"
    return default_value, "default"


@dataclass(frozen=True)
class Settings:
    """Effective run settings after CLI > env > config > default resolution"""

    tolerance: float
    seed: int
    trials: int
    z_sweep: Tuple[float, ...]
    workers: Optional[int]
    svg_size: int
    sources: Dict[str, str] = field(default_factory=dict, compare=False)

    def suite_context(self) -> SuiteContext:
        return SuiteContext(
            trials=self.trials,
            seed=self.seed,
            tolerance=self.tolerance,
            z_sweep=self.z_sweep,
            workers=self.workers,
        )


def _as_float(value: Any, name: str) -> float:
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise InvalidParameter(f"{name} must be a number, got {value!r}")
    if not math.isfinite(out):
        raise InvalidParameter(f"{name} must be finite, got {value!r}")
    return out


def _as_int(value: Any, name: str, minimum: int) -> int:
    if isinstance(value, bool):
        raise InvalidParameter(f"{name} must be an integer, got {value!r}")
    try:
        out = int(value)
    except (TypeError, ValueError):
        raise InvalidParameter(f"{name} must be an integer, got {value!r}")
    if isinstance(value, float) and out != value:
        raise InvalidParameter(f"{name} must be an integer, got {value!r}")
    if out < minimum:
        raise InvalidParameter(f"{name} must be >= {minimum}, got {out}")
    return out


def parse_z_sweep(value: Any) -> Tuple[float, ...]:
    """Heights from a list or a comma-separated string

    Raises:
        InvalidParameter: Unless the heights are non-negative and strictly increasing
    """
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    if not isinstance(value, (list, tuple)) or not value:
        raise InvalidParameter(f"z sweep must be a non-empty list of heights, got {value!r}")
    zs = tuple(_as_float(v, "z sweep height") for v in value)
    if any(z < 0 for z in zs):
        raise InvalidParameter(f"z sweep heights must be non-negative, got {list(zs)}")
    if any(b <= a for a, b in zip(zs, zs[1:])):
        raise InvalidParameter(f"z sweep heights must be strictly increasing, got {list(zs)}")
    return zs


def resolve_settings(config: dict, args=None) -> Settings:
    """Resolve every setting and remember where it came from

    Args:
        config: Loaded configuration (see initialize.load_config)
        args: Parsed CLI arguments; missing attributes count as not given

    Raises:
        InvalidParameter: If a resolved value has the wrong type or range
    """
    sources: Dict[str, str] = {}

    raw, sources["tolerance"] = _get_value_source(
        getattr(args, "tolerance", None), TOLERANCE_ENV, config.get("tolerance"), DEFAULT_TOLERANCE
    )
    tolerance = _as_float(raw, "tolerance")
    if tolerance <= 0:
        raise InvalidParameter(f"tolerance must be positive, got {tolerance}")

    raw, sources["seed"] = _get_value_source(getattr(args, "seed", None), SEED_ENV, config.get("seed"), DEFAULT_SEED)
    seed = _as_int(raw, "seed", 0)

    raw, sources["trials"] = _get_value_source(getattr(args, "trials", None), None, config.get("trials"), DEFAULT_TRIALS)
    trials = _as_int(raw, "trials", 1)

    raw, sources["zSweep"] = _get_value_source(
        getattr(args, "z_sweep", None), None, config.get("zSweep"), list(DEFAULT_Z_SWEEP)
    )
    z_sweep = parse_z_sweep(raw)

    raw, sources["workers"] = _get_value_source(getattr(args, "workers", None), None, config.get("workers"), None)
    workers = None if raw is None else _as_int(raw, "workers", 1)

    svg_config = config.get("svg") if isinstance(config.get("svg"), dict) else {}
    raw, sources["svg.size"] = _get_value_source(None, None, svg_config.get("size"), DEFAULT_SVG_SIZE)
    svg_size = _as_int(raw, "svg.size", 16)

    return Settings(tolerance, seed, trials, z_sweep, workers, svg_size, sources)


# =============================================================================
# Configuration report
# =============================================================================


def _print_config_header(config: dict):
    """Print configuration report header"""
    log_info("=" * 70)
    log_info("CONFIGURATION REPORT")
    log_info("=" * 70)

    config_path = config.get("_config_path")
    if config_path:
        log_info(f"\nConfiguration file: {config_path}")
    else:
        log_info("\nConfiguration file: None (using defaults)")


def _print_settings_section(config: dict, args):
    """Print core settings with their sources"""
    log_info("\n" + "-" * 70)
    log_info("CORE SETTINGS")
    log_info("-" * 70)

    try:
        settings = resolve_settings(config, args)
    except InvalidParameter as e:
        log_warning(f"Cannot resolve settings: {e.message}", code=CONFIG_INVALID)
        return

    log_info(f"tolerance: {settings.tolerance:g} (source: {settings.sources['tolerance']})")
    log_info(f"seed: {settings.seed} (source: {settings.sources['seed']})")
    log_info(f"trials: {settings.trials} (source: {settings.sources['trials']})")
    log_info(f"zSweep: {list(settings.z_sweep)} (source: {settings.sources['zSweep']})")
    workers = "cpu count" if settings.workers is None else settings.workers
    log_info(f"workers: {workers} (source: {settings.sources['workers']})")


def _print_logging_section(args):
    """Print logging section of configuration report"""
    log_info("\n" + "-" * 70)
    log_info("LOGGING")
    log_info("-" * 70)

    current_level = get_log_level()
    level_names = {
        LogLevel.DEBUG: "DEBUG",
        LogLevel.INFO: "INFO",
        LogLevel.WARNING: "WARNING",
        LogLevel.ERROR: "ERROR",
    }

    log_level_cli = getattr(args, "log_level", None) if args else None
    quiet_cli = getattr(args, "quiet", False) if args else False
    verbose_cli = getattr(args, "verbose", False) if args else False
    env_log_level = os.environ.get(LOG_LEVEL_ENV)

    if log_level_cli:
        source = f"CLI arg (--log-level={log_level_cli})"
    elif quiet_cli:
        source = "CLI arg (--quiet)"
    elif verbose_cli:
        source = "CLI arg (--verbose)"
    elif env_log_level:
        source = f"env var ({LOG_LEVEL_ENV}={env_log_level})"
    else:
        source = "default"

    log_info(f"level: {level_names.get(current_level, 'UNKNOWN')} (source: {source})")


def _print_suites_section(config: dict, args):
    """Print suites section of configuration report"""
    log_info("\n" + "-" * 70)
    log_info("SUITES")
    log_info("-" * 70)

    suites_config = config.get("suites", {}) if isinstance(config.get("suites"), dict) else {}

    selected_cli = getattr(args, "suite", None) if args else None
    if selected_cli:
        log_info(f"selected: {selected_cli} (source: CLI arg --suite)")

    for key in ("enabled", "disabled", "order"):
        value = suites_config.get(key, [])
        source = "config file" if value else "default"
        log_info(f"{key}: {value} (source: {source})")


def _print_svg_section(config: dict):
    log_info("\n" + "-" * 70)
    log_info("SVG")
    log_info("-" * 70)
    svg_config = config.get("svg") if isinstance(config.get("svg"), dict) else {}
    size, source = _get_value_source(None, None, svg_config.get("size"), DEFAULT_SVG_SIZE)
    log_info(f"size: {size} (source: {source})")


def _print_config_report(config: dict, args):
    """Print comprehensive configuration report showing all values and sources"""
    _print_config_header(config)
    _print_settings_section(config, args)
    _print_logging_section(args)
    _print_suites_section(config, args)
    _print_svg_section(config)


def _check_name_list(section: dict, key: str, prefix: str, errors: list):
    if key not in section:
        return
    value = section[key]
    if not isinstance(value, list):
        errors.append(f"'{prefix}.{key}' must be an array")
    elif all(isinstance(p, str) for p in value):
        log_info(f"✓ {prefix}.{key} is valid ({len(value)} suites)")
    else:
        errors.append(f"'{prefix}.{key}' must contain only strings")


def _validate_config_structure(config: dict) -> tuple[list, list]:
    """Validate configuration structure and values

    Returns:
        Tuple of (errors, warnings) lists
    """
    errors = []
    warnings = []

    if not isinstance(config, dict):
        errors.append("Config must be a JSON object")
        log_error("✗ Config must be a JSON object", code=CONFIG_INVALID)
        return errors, warnings

    log_info("\n✓ Valid config structure")

    if "tolerance" in config:
        value = config["tolerance"]
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
            errors.append("'tolerance' must be a positive number")
        else:
            log_info(f"✓ tolerance is valid ({value:g})")
            if value > 1e-4:
                warnings.append(f"tolerance {value:g} is coarse; overlap threshold becomes {(100 * value) ** 2:g}")
                log_warning(f"⚠ tolerance {value:g} is coarse", code=CONFIG_INVALID)

    for key, minimum in (("seed", 0), ("trials", 1)):
        if key in config:
            value = config[key]
            if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
                errors.append(f"'{key}' must be an integer >= {minimum}")
            else:
                log_info(f"✓ {key} is valid ({value})")

    if "zSweep" in config:
        if not isinstance(config["zSweep"], list):
            errors.append("'zSweep' must be an array of heights")
        else:
            try:
                zs = parse_z_sweep(config["zSweep"])
                log_info(f"✓ zSweep is valid ({len(zs)} heights)")
            except InvalidParameter as e:
                errors.append(f"'zSweep': {e.message}")

    if "workers" in config and config["workers"] is not None:
        value = config["workers"]
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            errors.append("'workers' must be a positive integer or null")
        else:
            log_info(f"✓ workers is valid ({value})")

    if "suites" in config:
        if not isinstance(config["suites"], dict):
            errors.append("'suites' must be an object")
        else:
            for key in ("enabled", "disabled", "order"):
                _check_name_list(config["suites"], key, "suites", errors)

    if "svg" in config:
        if not isinstance(config["svg"], dict):
            errors.append("'svg' must be an object")
        elif "size" in config["svg"]:
            size = config["svg"]["size"]
            if isinstance(size, bool) or not isinstance(size, int) or size < 16:
                errors.append("'svg.size' must be an integer >= 16")
            else:
                log_info(f"✓ svg.size is valid ({size})")

    unknown_keys = set(config.keys()) - KNOWN_KEYS
    if unknown_keys:
        warnings.append(f"Unknown config keys (will be ignored): {', '.join(sorted(unknown_keys))}")
        log_warning(f"⚠ Unknown config keys: {', '.join(sorted(unknown_keys))}", code=CONFIG_INVALID)

    return errors, warnings


def validate_config(config: dict, args=None) -> int:
    """Validate configuration structure and values with comprehensive reporting

    Args:
        config: Configuration dictionary to validate
        args: Optional CLI args to check for overrides

    Returns:
        Exit code (SUCCESS = valid, CONFIG_ERROR = invalid)
    """
    _print_config_report(config, args)

    log_info("\n" + "=" * 70)
    log_info("VALIDATION RESULTS")
    log_info("=" * 70)

    errors, warnings = _validate_config_structure(config)

    log_info("\n" + "=" * 70)
    if errors:
        log_error(f"✗ Configuration is invalid ({len(errors)} error(s))", code=CONFIG_INVALID)
        for error in errors:
            log_error(f"  - {error}", code=CONFIG_INVALID)
        log_info("=" * 70)
        return CONFIG_ERROR

    if warnings:
        log_success(f"✓ Configuration is valid (with {len(warnings)} warning(s))")
    else:
        log_success("✓ Configuration is valid")
    log_info("=" * 70)

    return SUCCESS
