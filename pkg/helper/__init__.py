"""
helper - Modular components for prismatoid-band-tools

Geometry, band construction, opening analysis, radial monotonicity,
rotation composition and the band-unfolder, plus the document, rendering,
configuration and verification layers the CLI is built on.
"""

# Re-export all constants (centralized configuration)
from .constants import (
    # Tolerances
    DEFAULT_TOLERANCE,
    ARCCOS_CLAMP,
    ISOMETRY_TOLERANCE,
    ROTATION_TOLERANCE,
    MONOTONIC_SLACK,
    # Generator
    NESTING_MARGIN,
    DEFAULT_SPIKE_SHARPNESS,
    # Unfolding
    DEFAULT_Z_SWEEP,
    COMBINATORICS_HEIGHTS,
    # Parallel processing
    DEFAULT_MAX_WORKERS,
    PARALLEL_THRESHOLD,
    # Verification and CLI
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_SVG_SIZE,
    CONFIG_FILENAME,
    REQUIRED_SUITES,
    # Plugin system
    DEFAULT_PLUGIN_PRIORITY,
)

# Re-export logging functions for convenience
from .logging import (
    LEVEL_NAMES,
    LogLevel,
    log_debug,
    log_info,
    log_success,
    log_warning,
    log_error,
    set_log_level,
    get_log_level,
    set_log_level_from_env,
    create_progress_context,
)

# Re-export exit codes
from .exit_codes import (
    SUCCESS,
    GENERAL_ERROR,
    USAGE_ERROR,
    KEYBOARD_INTERRUPT,
    to_process_exit,
    get_exit_code_name,
    get_exit_code_description,
    list_exit_codes,
)

# Errors
from .errors import (
    GeometryError,
    DomainError,
    DegenerateInput,
    DegenerateTriangle,
    DegenerateVector,
    DegenerateSegment,
    DegenerateHeight,
    IndexOutOfRange,
    NestingViolation,
    ConvexityViolation,
    InvalidOpening,
    HypothesisViolation,
    InvalidCutEdge,
    UnverifiedWitness,
    PlacementFailure,
    InvalidParameter,
    PreconditionViolation,
    DocumentError,
)

# Utilities
from .utils import (
    format_json,
    write_json,
    read_json_with_size_limit,
    trial_seed,
    parallel_map,
)

# Geometry core
from .geometry import (
    set_tolerance,
    get_tolerance,
    Point2,
    Point3,
    orientation,
    segments_intersect,
    signed_area,
    diameter,
    convex_hull_2d,
    PolyChain,
    angle_at,
    ConvexPolygon,
    point_strictly_inside,
    polygons_overlap_area,
    triangles_overlap,
    RigidMotion2,
)

# Band construction
from .band import (
    NestedPrismatoid,
    BandTriangle,
    Band,
    build_band,
    band_combinatorics,
    edge_lengths_3d,
    hull_validity_margin,
)

# Opening analysis
from .opening import (
    phi_closed_form,
    phi_derivative_printed,
    phi_derivative_exact,
    phi_derivative_numeric,
    VertexOpeningConfig,
    phi_from_geometry,
    gaussian_arcs,
    spherical_path_length,
    check_opening,
    reflection_identity,
    check_monotonic,
    VertexOpening,
    OpeningReport,
    open_band_report,
)

# Radial monotonicity
from .radial import (
    is_rm_from,
    is_rm,
    rm_margin,
    acute_vertices,
    RmWitness,
    boundary_paths,
    verify_witness,
    find_rm_property,
    open_chain,
    check_noncrossing,
    find_crossing_opening,
    Involute,
    involute_of,
)

# Rotation composition
from .rotations import (
    PlanarRotation,
    Translation,
    compose,
    apply_sequentially,
    weighted_center,
    hull_distance,
    hull_membership_check,
    two_rotation_apex,
    thales_gap,
)

# Unfolder
from .unfolder import (
    CutPlan,
    Layout,
    OverlapFinding,
    LayoutVerdict,
    ZVerdict,
    develop_band,
    check_layout,
    layout_overlaps,
    find_safe_cuts,
    choose_witness,
    plan_unfold,
    unfold,
    unfold_with_fallback,
    z_sweep,
    l_a_chain,
    l_b_chain,
    isometry_error,
)

# Generator
from .generator import (
    random_convex_polygon,
    random_nested_prismatoid,
    random_nested_prismoid,
    regular_polygon,
    spiked_hexagon,
    rm_property_threshold,
    rm_frequency,
    find_overlap_demo,
    GenConfig,
)

# Documents and rendering
from .documents import (
    PolygonDocument,
    PrismatoidDocument,
    parse_prismatoid,
    parse_polygon,
    load_prismatoid,
    load_polygon,
    VerificationReport,
)
from .render import (
    to_svg,
    render_layout,
    render_polygon,
    render_involute,
    render_phi_plot,
    emit_phi_csv,
    write_phi_csv,
    write_svg,
)

# Config
from .config import (
    Settings,
    default_config,
    resolve_settings,
    validate_config,
)

# Plugin loading and verification
from .plugin_loader import (
    Plugin,
    TrialOutcome,
    CheckOutcome,
    SuiteContext,
    discover_suites,
    load_suites,
)
from .verify import (
    run_suite,
    run_verification,
    print_report,
)

__all__ = [
    # Constants
    "DEFAULT_TOLERANCE",
    "ARCCOS_CLAMP",
    "ISOMETRY_TOLERANCE",
    "ROTATION_TOLERANCE",
    "MONOTONIC_SLACK",
    "NESTING_MARGIN",
    "DEFAULT_SPIKE_SHARPNESS",
    "DEFAULT_Z_SWEEP",
    "COMBINATORICS_HEIGHTS",
    "DEFAULT_MAX_WORKERS",
    "PARALLEL_THRESHOLD",
    "DEFAULT_SEED",
    "DEFAULT_TRIALS",
    "DEFAULT_SVG_SIZE",
    "CONFIG_FILENAME",
    "REQUIRED_SUITES",
    "DEFAULT_PLUGIN_PRIORITY",
    # Logging
    "LEVEL_NAMES",
    "LogLevel",
    "log_debug",
    "log_info",
    "log_success",
    "log_warning",
    "log_error",
    "set_log_level",
    "get_log_level",
    "set_log_level_from_env",
    "create_progress_context",
    # Exit codes
    "SUCCESS",
    "GENERAL_ERROR",
    "USAGE_ERROR",
    "KEYBOARD_INTERRUPT",
    "to_process_exit",
    "get_exit_code_name",
    "get_exit_code_description",
    "list_exit_codes",
    # Errors
    "GeometryError",
    "DomainError",
    "DegenerateInput",
    "DegenerateTriangle",
    "DegenerateVector",
    "DegenerateSegment",
    "DegenerateHeight",
    "IndexOutOfRange",
    "NestingViolation",
    "ConvexityViolation",
    "InvalidOpening",
    "HypothesisViolation",
    "InvalidCutEdge",
    "UnverifiedWitness",
    "PlacementFailure",
    "InvalidParameter",
    "PreconditionViolation",
    "DocumentError",
    # Utils
    "format_json",
    "write_json",
    "read_json_with_size_limit",
    "trial_seed",
    "parallel_map",
    # Geometry
    "set_tolerance",
    "get_tolerance",
    "Point2",
    "Point3",
    "orientation",
    "segments_intersect",
    "signed_area",
    "diameter",
    "convex_hull_2d",
    "PolyChain",
    "angle_at",
    "ConvexPolygon",
    "point_strictly_inside",
    "polygons_overlap_area",
    "triangles_overlap",
    "RigidMotion2",
    # Band
    "NestedPrismatoid",
    "BandTriangle",
    "Band",
    "build_band",
    "band_combinatorics",
    "edge_lengths_3d",
    "hull_validity_margin",
    # Opening
    "phi_closed_form",
    "phi_derivative_printed",
    "phi_derivative_exact",
    "phi_derivative_numeric",
    "VertexOpeningConfig",
    "phi_from_geometry",
    "gaussian_arcs",
    "spherical_path_length",
    "check_opening",
    "reflection_identity",
    "check_monotonic",
    "VertexOpening",
    "OpeningReport",
    "open_band_report",
    # Radial
    "is_rm_from",
    "is_rm",
    "rm_margin",
    "acute_vertices",
    "RmWitness",
    "boundary_paths",
    "verify_witness",
    "find_rm_property",
    "open_chain",
    "check_noncrossing",
    "find_crossing_opening",
    "Involute",
    "involute_of",
    # Rotations
    "PlanarRotation",
    "Translation",
    "compose",
    "apply_sequentially",
    "weighted_center",
    "hull_distance",
    "hull_membership_check",
    "two_rotation_apex",
    "thales_gap",
    # Unfolder
    "CutPlan",
    "Layout",
    "OverlapFinding",
    "LayoutVerdict",
    "ZVerdict",
    "develop_band",
    "check_layout",
    "layout_overlaps",
    "find_safe_cuts",
    "choose_witness",
    "plan_unfold",
    "unfold",
    "unfold_with_fallback",
    "z_sweep",
    "l_a_chain",
    "l_b_chain",
    "isometry_error",
    # Generator
    "random_convex_polygon",
    "random_nested_prismatoid",
    "random_nested_prismoid",
    "regular_polygon",
    "spiked_hexagon",
    "rm_property_threshold",
    "rm_frequency",
    "find_overlap_demo",
    "GenConfig",
    # Documents and rendering
    "PolygonDocument",
    "PrismatoidDocument",
    "parse_prismatoid",
    "parse_polygon",
    "load_prismatoid",
    "load_polygon",
    "VerificationReport",
    "to_svg",
    "render_layout",
    "render_polygon",
    "render_involute",
    "render_phi_plot",
    "emit_phi_csv",
    "write_phi_csv",
    "write_svg",
    # Config
    "Settings",
    "default_config",
    "resolve_settings",
    "validate_config",
    # Plugins and verification
    "Plugin",
    "TrialOutcome",
    "CheckOutcome",
    "SuiteContext",
    "discover_suites",
    "load_suites",
    "run_suite",
    "run_verification",
    "print_report",
]
