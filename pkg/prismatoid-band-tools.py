#!/usr/bin/env python3
"""
prismatoid-band-tools.py - Band-unfolding toolkit for nested prismatoids

Generates nested prismatoids, band-unfolds them, checks the RM-property of
polygons, tabulates vertex openings and runs the verification suites.

Usage:
    # Generate an instance and unfold it
    python prismatoid-band-tools.py gen --n-b 14 --n-a 16 --z 0.2 --out inst.json
    python prismatoid-band-tools.py unfold --in inst.json --svg out.svg

    # RM-property witnesses of a polygon
    python prismatoid-band-tools.py rm-check --in polygon.json --svg rm.svg

    # Run every verification suite
    python prismatoid-band-tools.py verify --trials 1000 --seed 7
"""

from __future__ import annotations

__version__ = "1.0.1"

import argparse
import sys
from typing import List, Optional

from helper import (
    # Logging
    LEVEL_NAMES,
    LogLevel,
    log_error,
    set_log_level,
    set_log_level_from_env,
    # Errors
    GeometryError,
    # Config
    validate_config,
)

from helper.exit_codes import (
    GENERAL_ERROR,
    KEYBOARD_INTERRUPT,
    SUCCESS,
    list_exit_codes,
    to_process_exit,
)

from helper.commands import (
    figures_command,
    gen_command,
    list_suites_command,
    phi_command,
    rm_check_command,
    safe_cuts_command,
    unfold_command,
    verify_command,
)

from helper.initialize import initialize_system


# ============================================================================
# Main CLI
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Band-unfolding toolkit for nested prismatoids",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    parser.add_argument(
        "--version",
        action="version",
        version=f"prismatoid-band-tools {__version__}",
    )

    parser.add_argument(
        "--config",
        type=str,
        help="Path to config file (overrides standard locations)",
    )

    # Global logging control options
    log_group = parser.add_mutually_exclusive_group()
    log_group.add_argument(
        "--quiet",
        action="store_true",
        help="Suppress info messages (warnings and errors only)",
    )
    log_group.add_argument(
        "--verbose",
        action="store_true",
        help="Show debug messages",
    )
    log_group.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Set log level explicitly (overrides --quiet/--verbose and PRISMATOID_TOOLS_LOG_LEVEL)",
    )

    # Run settings accepted by every subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Random seed (default: 7)")
    common.add_argument("--tolerance", type=float, help="ε per unit of instance diameter (default: 1e-9)")

    subparsers = parser.add_subparsers(dest="command", required=True)

    # gen
    gen_parser = subparsers.add_parser("gen", parents=[common], help="Generate a random nested prismatoid")
    gen_parser.add_argument("--n-b", type=int, default=14, help="Vertices of the base B (default: 14)")
    gen_parser.add_argument("--n-a", type=int, default=16, help="Vertices of the top A (default: 16)")
    gen_parser.add_argument("--z", type=float, default=0.2, help="Height of A (default: 0.2)")
    gen_parser.add_argument("--prismoid", action="store_true", help="Homothetic top with parallel edges (ignores --n-a)")
    gen_parser.add_argument("--out", "--json", dest="out", default="-", help="Output document (default: stdout)")

    # unfold
    unfold_parser = subparsers.add_parser("unfold", parents=[common], help="Band-unfold a prismatoid document")
    unfold_parser.add_argument("--in", dest="input", help="Prismatoid document (default: stdin)")
    unfold_parser.add_argument("--z", type=float, help="Override the document's height")
    unfold_parser.add_argument("--cut", type=int, help="Lateral edge to cut (default: safe cut at the witness apex)")
    unfold_parser.add_argument("--attach-b", type=int, help="Uncut edge of B (default: farthest from the cut)")
    unfold_parser.add_argument("--witness", help="RM witness of A as EDGE,APEX (default: largest slack)")
    unfold_parser.add_argument("--z-sweep", help="Also check the plan at these comma-separated heights")
    unfold_parser.add_argument("--svg", help="Write the layout as SVG")
    unfold_parser.add_argument("--json", help="Write plan, verdict and layout as JSON ('-' for stdout)")

    # safe-cuts
    safe_parser = subparsers.add_parser("safe-cuts", parents=[common], help="List safe cuts of a prismatoid")
    safe_parser.add_argument("--in", dest="input", help="Prismatoid document (default: stdin)")
    safe_parser.add_argument("--z", type=float, help="Override the document's height")
    safe_parser.add_argument("--z-sweep", help="Comma-separated heights to check instead of the document's")
    safe_parser.add_argument("--json", help="Write the safe cuts as JSON ('-' for stdout)")

    # rm-check
    rm_parser = subparsers.add_parser("rm-check", parents=[common], help="Find RM-property witnesses of a polygon")
    rm_parser.add_argument("--in", dest="input", help="Polygon or prismatoid document (default: stdin)")
    rm_parser.add_argument("--svg", help="Draw the polygon with its best witness")
    rm_parser.add_argument("--json", help="Write the witness list as JSON ('-' for stdout)")

    # phi
    phi_parser = subparsers.add_parser("phi", parents=[common], help="Tabulate the opening φ(z) of one lifted vertex")
    phi_parser.add_argument("--theta", type=float, default=120.0, help="Angle at b in degrees (default: 120)")
    phi_parser.add_argument("--x", type=float, default=0.0, help="x of the lifted point (default: 0)")
    phi_parser.add_argument("--y", type=float, default=1.0, help="y of the lifted point (default: 1)")
    phi_parser.add_argument("--z-max", type=float, default=5.0, help="Largest height (default: 5)")
    phi_parser.add_argument("--z-step", type=float, default=0.05, help="Height step (default: 0.05)")
    phi_parser.add_argument("--csv", help="CSV output (default: stdout)")
    phi_parser.add_argument("--svg", help="Plot φ(z) as SVG")

    # verify
    verify_parser = subparsers.add_parser("verify", parents=[common], help="Run the verification suites")
    verify_parser.add_argument("--trials", type=int, help="Random trials per suite (default: 1000)")
    verify_parser.add_argument(
        "--suite", action="append", default=[], help="Run only this suite (repeatable)"
    )
    verify_parser.add_argument("--replay-seed", type=int, help="Rerun one recorded trial seed in each suite")
    verify_parser.add_argument("--workers", type=int, help="Parallel trial workers (default: cpu count)")
    verify_parser.add_argument("--z-sweep", help="Comma-separated heights for the unfolder suite")
    verify_parser.add_argument("--json", help="Write the report as JSON ('-' for stdout)")

    # figures
    figures_parser = subparsers.add_parser("figures", parents=[common], help="Regenerate the example figures")
    figures_parser.add_argument("--out", default="figures", help="Output directory (default: figures)")

    subparsers.add_parser("validate-config", parents=[common], help="Show and validate the configuration")
    subparsers.add_parser("list-suites", help="List verification suites")
    subparsers.add_parser("exit-codes", help="List detail codes and the process exit each maps to")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args: argparse.Namespace = parser.parse_args(argv)

    # Set logging level from CLI args (before any logging occurs)
    if args.log_level:
        set_log_level(LEVEL_NAMES[args.log_level])
    elif args.quiet:
        set_log_level(LogLevel.WARNING)
    elif args.verbose:
        set_log_level(LogLevel.DEBUG)
    else:
        set_log_level_from_env()

    try:
        needs_suites = args.command in ("verify", "list-suites")
        config, settings, suites = initialize_system(args, with_suites=needs_suites)

        # Command dispatch
        if args.command == "validate-config":
            code = validate_config(config, args)
        elif args.command == "list-suites":
            code = list_suites_command(suites)
        elif args.command == "exit-codes":
            print(list_exit_codes())
            code = SUCCESS
        elif args.command == "gen":
            code = gen_command(args, settings)
        elif args.command == "unfold":
            code = unfold_command(args, settings)
        elif args.command == "safe-cuts":
            code = safe_cuts_command(args, settings)
        elif args.command == "rm-check":
            code = rm_check_command(args, settings)
        elif args.command == "phi":
            code = phi_command(args, settings)
        elif args.command == "verify":
            code = verify_command(args, settings, suites)
        elif args.command == "figures":
            code = figures_command(args, settings)
        else:
            log_error(f"Unknown command: {args.command}", code=GENERAL_ERROR)
            return GENERAL_ERROR
        return to_process_exit(code)

    except KeyboardInterrupt:
        print("\nInterrupted by user")
        return KEYBOARD_INTERRUPT
    except GeometryError as e:
        log_error(e.message, code=e.code)
        return to_process_exit(e.code)
    except Exception as e:
        log_error(f"Error: {e}", code=GENERAL_ERROR)
        import traceback

        traceback.print_exc()
        return GENERAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
