"""
Exit code constants for prismatoid-band-tools

Named constants for every code used in log prefixes and command returns. The
process itself only ever exits with 0, 1, 2 (or 130 on Ctrl+C); use
to_process_exit() to collapse a detail code to that contract.
"""

# Success
SUCCESS = 0

# General errors (1-9)
GENERAL_ERROR = 1  # domain failure
USAGE_ERROR = 2  # bad arguments, unreadable or malformed input
KEYBOARD_INTERRUPT = 130

# Configuration errors (10-19)
CONFIG_ERROR = 10
CONFIG_INVALID = 11
CONFIG_NOT_FOUND = 12

# Input errors (20-29)
DOCUMENT_INVALID = 23

# Geometry errors (30-39)
DOMAIN_ERROR = 30
DEGENERATE_GEOMETRY = 31
NESTING_VIOLATION = 32
CONVEXITY_VIOLATION = 33
INVALID_OPENING = 34
HYPOTHESIS_VIOLATION = 35
PRECONDITION_VIOLATION = 36
INVALID_PARAMETER = 37

# Verification errors (40-49)
VERIFICATION_FAILED = 41
SUITE_MISSING = 42

# Plugin errors (50-59)
PLUGIN_NOT_FOUND = 51
PLUGIN_LOAD_ERROR = 52

# Unfolding errors (60-69)
OVERLAP_FOUND = 60
INVALID_CUT = 61
UNVERIFIED_WITNESS = 62
PLACEMENT_FAILURE = 63
NO_RM_PROPERTY = 64


_USAGE_CODES = {USAGE_ERROR, CONFIG_ERROR, CONFIG_INVALID, CONFIG_NOT_FOUND}
_USAGE_CODES |= {DOCUMENT_INVALID, INVALID_PARAMETER}


def to_process_exit(code: int) -> int:
    """Collapse a detail code to the process exit contract

    Args:
        code: Any code from this module

    Returns:
        0 for success, 2 for usage/parse problems, 130 for Ctrl+C, 1 otherwise
    """
    if code == SUCCESS:
        return SUCCESS
    if code == KEYBOARD_INTERRUPT:
        return KEYBOARD_INTERRUPT
    if code in _USAGE_CODES:
        return USAGE_ERROR
    return GENERAL_ERROR


def get_exit_code_name(code: int) -> str:
    """Get human-readable name for exit code

    Args:
        code: Exit code number

    Returns:
        Name of the exit code constant (e.g., "SUCCESS", "OVERLAP_FOUND")
    """
    code_map = {
        0: "SUCCESS",
        1: "GENERAL_ERROR",
        2: "USAGE_ERROR",
        130: "KEYBOARD_INTERRUPT",
        10: "CONFIG_ERROR",
        11: "CONFIG_INVALID",
        12: "CONFIG_NOT_FOUND",
        23: "DOCUMENT_INVALID",
        30: "DOMAIN_ERROR",
        31: "DEGENERATE_GEOMETRY",
        32: "NESTING_VIOLATION",
        33: "CONVEXITY_VIOLATION",
        34: "INVALID_OPENING",
        35: "HYPOTHESIS_VIOLATION",
        36: "PRECONDITION_VIOLATION",
        37: "INVALID_PARAMETER",
        41: "VERIFICATION_FAILED",
        42: "SUITE_MISSING",
        51: "PLUGIN_NOT_FOUND",
        52: "PLUGIN_LOAD_ERROR",
        60: "OVERLAP_FOUND",
        61: "INVALID_CUT",
        62: "UNVERIFIED_WITNESS",
        63: "PLACEMENT_FAILURE",
        64: "NO_RM_PROPERTY",
    }
    return code_map.get(code, f"UNKNOWN_ERROR_{code}")


def get_exit_code_description(code: int) -> str:
    """Get description of what exit code means

    Args:
        code: Exit code number

    Returns:
        Human-readable description of the error
    """
    descriptions = {
        0: "Operation completed successfully",
        1: "Domain failure (a checked property did not hold)",
        2: "Usage error or unreadable input",
        130: "Operation cancelled by user (Ctrl+C)",
        10: "Configuration error",
        11: "Configuration file is invalid",
        12: "Configuration file not found",
        23: "Document does not describe a valid instance",
        30: "Numeric domain error (arccos argument out of range)",
        31: "Degenerate geometry (zero-length segment, zero-area triangle)",
        32: "Top polygon is not strictly inside the base",
        33: "Chain or polygon is not convex",
        34: "Opening exceeds the straight angle",
        35: "Rotation angles violate the hypothesis",
        36: "Operation precondition not met",
        37: "Invalid parameter value",
        41: "Verification failed",
        42: "Required verification suite is missing",
        51: "Requested suite not found",
        52: "Failed to load suite",
        60: "Layout overlaps",
        61: "Cut edge is not a lateral band edge",
        62: "RM witness failed re-verification",
        63: "Could not place the top inside the base",
        64: "Polygon lacks the RM-property",
    }
    return descriptions.get(code, "Unknown error")


def list_exit_codes() -> str:
    """Generate formatted list of all exit codes

    Returns:
        Formatted string showing all exit codes and their meanings
    """
    lines = ["Exit Codes:", ""]

    categories = [
        ("Process", [0, 1, 2, 130]),
        ("Configuration Errors", list(range(10, 20))),
        ("Input Errors", list(range(20, 30))),
        ("Geometry Errors", list(range(30, 40))),
        ("Verification Errors", list(range(40, 50))),
        ("Plugin Errors", list(range(50, 60))),
        ("Unfolding Errors", list(range(60, 70))),
    ]

    for category_name, codes in categories:
        lines.append(f"{category_name}:")
        for code in codes:
            name = get_exit_code_name(code)
            desc = get_exit_code_description(code)
            if name != f"UNKNOWN_ERROR_{code}":
                lines.append(f"  {code:3d} - {name:24s} exit {to_process_exit(code):<3d} {desc}")
        lines.append("")

    return "\n".join(lines)
