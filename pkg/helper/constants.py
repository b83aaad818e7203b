"""
Constants for prismatoid-band-tools

All tolerances, numeric knobs and defaults in one place for easy maintenance.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

# =============================================================================
# Tolerances
# =============================================================================

DEFAULT_TOLERANCE: float = 1e-9  # ε per unit of instance diameter
ARCCOS_CLAMP: float = 1e-12  # arccos arguments this far outside [-1, 1] are clamped
OVERLAP_AREA_SCALE: float = 100.0  # overlap threshold is (OVERLAP_AREA_SCALE * ε)^2
MARGINAL_FACTOR: float = 10.0  # verdicts whose sqrt(area) is within MARGINAL_FACTOR * ε of OVERLAP_AREA_SCALE * ε are marginal
ROTATION_TOLERANCE: float = 1e-10  # composed vs sequential application agreement
ISOMETRY_TOLERANCE: float = 1e-9  # relative edge-length agreement of developed faces


# =============================================================================
# Opening analysis
# =============================================================================

FINITE_DIFFERENCE_STEP: float = 1e-4  # h for dφ/dz central differences
MONOTONIC_SLACK: float = 1e-8  # allowed decrease between consecutive φ(z) samples
REFERENCE_HEIGHT: float = 1.0  # combinatorics of the flat band are taken at this height


# =============================================================================
# Radial monotonicity and chains
# =============================================================================

CROSSING_SEARCH_STEPS: int = 100  # ω1 samples when hunting for a crossing opening
INVOLUTE_ARC_SAMPLES: int = 48  # polyline samples per involute arc when rendering


# =============================================================================
# Generator
# =============================================================================

NESTING_MARGIN: float = 0.02  # minimum gap between A and the boundary of B (diameter units)
HULL_PADDING: int = 8  # extra disk samples beyond n on the first hull attempt
MAX_HULL_ATTEMPTS: int = 64  # resampling rounds before giving up on a hull
MAX_PLACEMENT_ATTEMPTS: int = 200  # tries to nest A inside B
NEST_SCALE_RANGE: Tuple[float, float] = (0.2, 0.6)  # A size relative to B
MIN_PRISMOID_SCALE: float = 0.05  # smallest homothety factor worth keeping for a prismoid top
DEFAULT_SPIKE_SHARPNESS: float = 0.8  # spiked hexagon bulge pull-in (0 = regular)


# =============================================================================
# Unfolding
# =============================================================================

DEFAULT_Z_SWEEP: List[float] = [0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0]
COMBINATORICS_HEIGHTS: List[float] = [0.01, 0.1, 1.0, 10.0]


# =============================================================================
# Parallel Processing Configuration
# =============================================================================

DEFAULT_MAX_WORKERS: Optional[int] = None  # None = use os.cpu_count()
PARALLEL_THRESHOLD: int = 64  # Minimum trials required to enable parallel processing


# =============================================================================
# Verification and CLI defaults
# =============================================================================

DEFAULT_SEED: int = 7
DEFAULT_TRIALS: int = 1000
DEFAULT_SVG_SIZE: int = 800  # pixels, square canvas
CONFIG_FILENAME: str = ".prismatoid-band-tools.json"
MAX_DOCUMENT_SIZE: int = 16 * 1024 * 1024  # 16 MB for input JSON documents

# Suites verify must run; a missing one fails the run instead of vanishing from the report
REQUIRED_SUITES: List[str] = [
    "geometry",
    "band",
    "opening",
    "radial",
    "rotations",
    "unfolder",
    "generator",
    "documents",
]


# =============================================================================
# Plugin System Configuration
# =============================================================================

DEFAULT_PLUGIN_PRIORITY: int = (
    999  # Default priority for suites without explicit priority
)
