"""
Centralized initialization for command dispatch

Handles config loading, settings resolution, the global tolerance, and suite loading.
"""

from pathlib import Path
from typing import Optional, Tuple

import json5 as json

from .config import Settings, default_config, resolve_settings
from .constants import CONFIG_FILENAME
from .exit_codes import CONFIG_ERROR, CONFIG_NOT_FOUND
from .geometry import set_tolerance
from .logging import log_debug, log_info, log_warning
from .plugin_loader import load_suites


def _read_config(config_file: Path) -> Optional[dict]:
    try:
        with open(config_file, "r") as f:
            config = json.load(f)
    except Exception as e:
        log_warning(f"Failed to load config from {config_file}: {e}", code=CONFIG_ERROR)
        return None
    if not isinstance(config, dict):
        log_warning(f"Config in {config_file} is not a JSON object; ignoring it", code=CONFIG_ERROR)
        return None
    log_info(f"Using config from: {config_file}")
    config["_config_path"] = str(config_file.resolve())
    return config


def load_config(config_path: Optional[str] = None, quiet: bool = False) -> dict:
    """Load the configuration file, or defaults when none is found

    Search order: explicit --config path, working directory, home
    directory, repository root. The first readable file wins.

    Args:
        config_path: Explicit path from --config
        quiet: Skip the "no config file" notice

    Returns:
        Config dict with "_config_path" set (None for defaults)
    """
    if config_path is not None:
        config_file = Path(config_path)
        if config_file.exists():
            config = _read_config(config_file)
            if config is not None:
                return config
        else:
            log_warning(f"Config file not found: {config_file}", code=CONFIG_NOT_FOUND)

    search_paths = [
        Path.cwd() / CONFIG_FILENAME,
        Path.home() / CONFIG_FILENAME,
        Path(__file__).parent.parent / CONFIG_FILENAME,
    ]
    for config_file in search_paths:
        if config_file.exists():
            config = _read_config(config_file)
            if config is not None:
                return config

    if not quiet:
        log_debug("No config file found, using defaults")
    return default_config()


def initialize_system(args, with_suites: bool = False) -> Tuple[dict, Settings, Optional[dict]]:
    """
    Centralized initialization: loads config, resolves settings, sets the
    global tolerance, and loads suites when the command needs them.

    Returns:
        tuple: (config, settings, suites or None)

    Raises:
        InvalidParameter: If a resolved setting is out of range
    """
    config = load_config(getattr(args, "config", None))
    settings = resolve_settings(config, args)
    set_tolerance(settings.tolerance)
    log_debug(f"Settings: {settings}")

    suites = None
    if with_suites:
        suites = load_suites(
            config,
            selected=getattr(args, "suite", None) or None,
            quiet=getattr(args, "quiet", False),
        )
    return config, settings, suites
