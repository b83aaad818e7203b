"""
Instance generators

Random convex polygons (hull of uniform disk samples), nested prismatoids and
prismoids, regular polygons, and the spiked hexagon that lacks the
RM-property. Every generator is deterministic in its seed.
"""

import math
from dataclasses import asdict, dataclass
from typing import List, Optional, Tuple

import numpy as np
from shapely.ops import polylabel

from .band import NestedPrismatoid, build_band
from .constants import (
    DEFAULT_SPIKE_SHARPNESS,
    DEFAULT_Z_SWEEP,
    HULL_PADDING,
    MAX_HULL_ATTEMPTS,
    MAX_PLACEMENT_ATTEMPTS,
    MIN_PRISMOID_SCALE,
    NEST_SCALE_RANGE,
    NESTING_MARGIN,
)
from .errors import (
    ConvexityViolation,
    DegenerateInput,
    GeometryError,
    InvalidParameter,
    PlacementFailure,
    PreconditionViolation,
)
from .geometry import ConvexPolygon, convex_hull_2d
from .logging import log_debug, log_info
from .radial import find_rm_property
from .unfolder import CutPlan, OverlapFinding, farthest_b_edge, find_safe_cuts, layout_overlaps, unfold


def _rng(seed: Optional[int], rng: Optional[np.random.Generator]) -> np.random.Generator:
    return rng if rng is not None else np.random.default_rng(seed)


def _check_count(n: int, what: str = "n") -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 3:
        raise InvalidParameter(f"{what} must be an integer >= 3, got {n!r}")


def normalize(poly: ConvexPolygon) -> ConvexPolygon:
    """Centroid at the origin, diameter 1"""
    centred = poly.array - poly.centroid()
    scale = 1.0 / poly.diameter()
    return ConvexPolygon(tuple(map(tuple, centred * scale)))


def random_convex_polygon(n: int, seed: Optional[int] = None, rng: Optional[np.random.Generator] = None) -> ConvexPolygon:
    """Random strictly convex ccw n-gon with diameter 1, centred at the origin

    Args:
        n: Vertex count (>= 3)
        seed: Seed for a fresh generator (ignored when rng is given)
        rng: Generator to draw from

    Returns:
        Hull of n + padding uniform disk samples; the padding doubles while
        the hull is too small and surplus hull vertices are subsampled in order

    Raises:
        InvalidParameter: If n < 3
        PlacementFailure: If no valid hull appears within the attempt budget
    """
    _check_count(n)
    gen = _rng(seed, rng)
    padding = HULL_PADDING
    for _ in range(MAX_HULL_ATTEMPTS):
        m = n + padding
        radius = np.sqrt(gen.random(m))
        angle = gen.random(m) * 2 * math.pi
        pts = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])
        try:
            hull = convex_hull_2d(pts)
        except DegenerateInput:
            continue
        if hull.n < n:
            padding *= 2
            continue
        verts = hull.array
        if hull.n > n:
            keep = np.sort(gen.choice(hull.n, size=n, replace=False))
            verts = verts[keep]
        try:
            return normalize(ConvexPolygon(tuple(map(tuple, verts))))
        except (ConvexityViolation, DegenerateInput):
            continue
    raise PlacementFailure(f"No {n}-vertex hull after {MAX_HULL_ATTEMPTS} attempts")


def _place_inside(B: ConvexPolygon, A0: ConvexPolygon, gen: np.random.Generator) -> Optional[ConvexPolygon]:
    inner = B.to_shapely().buffer(-NESTING_MARGIN)
    if inner.is_empty:
        return None
    minx, miny, maxx, maxy = inner.bounds
    for _ in range(MAX_PLACEMENT_ATTEMPTS):
        scale = gen.uniform(*NEST_SCALE_RANGE)
        angle = gen.uniform(0.0, 2 * math.pi)
        offset = (gen.uniform(minx, maxx), gen.uniform(miny, maxy))
        A = A0.transformed(scale, angle, offset)
        if inner.contains(A.to_shapely()):
            return A
    return None


def random_nested_prismatoid(n_b: int, n_a: int, z: float, seed: Optional[int] = None) -> NestedPrismatoid:
    """Random nested prismatoid with diameter-1 base

    Raises:
        InvalidParameter: If a vertex count is below 3
        DegenerateHeight: If z is negative
        PlacementFailure: If A cannot be nested with margin after bounded retries
    """
    _check_count(n_b, "n_B")
    _check_count(n_a, "n_A")
    base_seq, top_seq, place_seq = np.random.SeedSequence(seed).spawn(3)
    B = random_convex_polygon(n_b, rng=np.random.default_rng(base_seq))
    A0 = random_convex_polygon(n_a, rng=np.random.default_rng(top_seq))
    A = _place_inside(B, A0, np.random.default_rng(place_seq))
    if A is None:
        raise PlacementFailure(f"Could not nest a {n_a}-gon inside the base within {MAX_PLACEMENT_ATTEMPTS} attempts")
    return NestedPrismatoid(B, A, z)


def _shrink_inside(B: ConvexPolygon, gen: np.random.Generator) -> Optional[ConvexPolygon]:
    """Homothetic copy of B about its pole of inaccessibility, NESTING_MARGIN clear of the boundary

    An edge at distance d from the centre moves to (1 - s) d away from its
    copy, so s <= 1 - margin / clearance keeps every edge clear.
    """
    shape = B.to_shapely()
    centre = polylabel(shape, tolerance=1e-6)
    clearance = shape.exterior.distance(centre)
    if clearance <= NESTING_MARGIN:
        return None
    top = min(NEST_SCALE_RANGE[1], 1.0 - NESTING_MARGIN / clearance)
    if top <= MIN_PRISMOID_SCALE:
        return None
    scale = gen.uniform(min(NEST_SCALE_RANGE[0], top / 2), top)
    c = np.array([centre.x, centre.y])
    return ConvexPolygon(tuple(map(tuple, c + scale * (B.array - c))))


def random_nested_prismoid(n: int, z: float, seed: Optional[int] = None) -> NestedPrismatoid:
    """Random nested prismoid: A is a shrunken copy of B

    Every lateral face is a planar trapezoid (two coplanar band triangles).
    Bases too thin to hold a copy with margin are redrawn from the same seed
    stream.

    Raises:
        InvalidParameter: If n < 3
        PlacementFailure: If no base in MAX_HULL_ATTEMPTS draws has room
    """
    _check_count(n)
    base_seq, place_seq = np.random.SeedSequence(seed).spawn(2)
    base_gen = np.random.default_rng(base_seq)
    place_gen = np.random.default_rng(place_seq)
    for attempt in range(MAX_HULL_ATTEMPTS):
        B = random_convex_polygon(n, rng=base_gen)
        A = _shrink_inside(B, place_gen)
        if A is not None:
            if attempt:
                log_debug(f"Prismoid base redrawn {attempt} time(s) for n={n}")
            return NestedPrismatoid(B, A, z)
    raise PlacementFailure(f"Could not shrink the {n}-gon inside itself with margin {NESTING_MARGIN}")


def regular_polygon(n: int) -> ConvexPolygon:
    """Regular ccw n-gon with circumradius 1 and a vertex at (1, 0)"""
    _check_count(n)
    ang = 2 * math.pi * np.arange(n) / n
    return ConvexPolygon(tuple(zip(np.cos(ang).tolist(), np.sin(ang).tolist())))


def spiked_hexagon(sharpness: float = DEFAULT_SPIKE_SHARPNESS) -> ConvexPolygon:
    """Convex hexagon with three spikes, lacking the RM-property when sharp

    Tips at 0°, 120° and 240° on the unit circle alternate with vertices at
    60°, 180° and 300° pulled in to radius 1 - sharpness/2. Tips turn acute
    once that radius drops below 2/(√3 + 1) (sharpness above about 0.536),
    and then every edge/apex split keeps a tip inside one of its paths.

    Raises:
        InvalidParameter: Unless 0 <= sharpness < 1
    """
    if not (isinstance(sharpness, (int, float)) and 0.0 <= sharpness < 1.0):
        raise InvalidParameter(f"Spike sharpness must lie in [0, 1), got {sharpness!r}")
    rho = 1.0 - sharpness / 2.0
    verts = []
    for k in range(6):
        r = 1.0 if k % 2 == 0 else rho
        a = k * math.pi / 3
        verts.append((r * math.cos(a), r * math.sin(a)))
    return ConvexPolygon(tuple(verts))


def rm_property_threshold(lo: float = 0.0, hi: float = DEFAULT_SPIKE_SHARPNESS, iterations: int = 40) -> float:
    """Sharpness at which the spiked hexagon loses the RM-property, by bisection

    Raises:
        PreconditionViolation: Unless the hexagon has the RM-property at lo and lacks it at hi
    """

    def has_rm(s: float) -> bool:
        return bool(find_rm_property(spiked_hexagon(s)))

    if not has_rm(lo) or has_rm(hi):
        raise PreconditionViolation(f"Bisection needs the RM-property at {lo} and none at {hi}")
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if has_rm(mid):
            lo = mid
        else:
            hi = mid
    log_debug(f"RM-property threshold bracket [{lo:.12f}, {hi:.12f}]")
    return (lo + hi) / 2


def rm_frequency(count: int = 40, n_range: Tuple[int, int] = (8, 12), seed: Optional[int] = None) -> Tuple[int, int]:
    """How many random polygons have the RM-property

    Returns:
        (with the RM-property, total)
    """
    gen = np.random.default_rng(seed)
    hits = 0
    for _ in range(count):
        n = int(gen.integers(n_range[0], n_range[1] + 1))
        if find_rm_property(random_convex_polygon(n, rng=gen)):
            hits += 1
    log_info(f"RM-property in {hits}/{count} random {n_range[0]}-{n_range[1]}-gons")
    return hits, count


# =============================================================================
# Overlap demonstration for tops without the RM-property
# =============================================================================


@dataclass(frozen=True)
class OverlapDemo:
    prismatoid: NestedPrismatoid
    plan: CutPlan
    finding: OverlapFinding
    trials: int


def _candidate_bases(A: ConvexPolygon, budget: int, gen: np.random.Generator) -> List[ConvexPolygon]:
    """Scaled and turned copies of A, then random bases around A's centroid"""
    centre = A.centroid()
    centred = ConvexPolygon(tuple(map(tuple, A.array - centre)))
    out: List[ConvexPolygon] = []
    for t in range(budget):
        if t % 2 == 0:
            scale = gen.uniform(1.15, 3.0)
            angle = gen.uniform(-0.3, 0.3)
            out.append(centred.transformed(scale, angle, centre))
        else:
            n = int(gen.integers(3, 13))
            shape = random_convex_polygon(n, rng=gen)
            out.append(shape.transformed(gen.uniform(1.5, 3.0) * A.diameter(), gen.uniform(0, 2 * math.pi), centre))
    return out


def find_overlap_demo(
    A: ConvexPolygon,
    budget: int = 40,
    seed: Optional[int] = None,
    z_values: Tuple[float, ...] = tuple(DEFAULT_Z_SWEEP),
) -> Optional[OverlapDemo]:
    """Search bases, heights, safe cuts and A-edges for an unfolding where A overlaps

    Args:
        A: Top polygon without the RM-property
        budget: Number of candidate bases to try
        seed: Seed for the candidate bases
        z_values: Heights tried for each base

    Returns:
        The first overlapping configuration, or None

    Raises:
        PreconditionViolation: If A has the RM-property
    """
    if find_rm_property(A):
        raise PreconditionViolation("Top polygon has the RM-property; its band-unfoldings do not overlap")
    gen = np.random.default_rng(seed)
    tried = 0
    for B in _candidate_bases(A, budget, gen):
        tried += 1
        try:
            flat = NestedPrismatoid(B, A, 0.0)
        except GeometryError:
            continue
        for z in z_values:
            p = flat.with_height(z)
            band = build_band(p)
            for cut in find_safe_cuts(p, band):
                for e in range(A.n):
                    plan = CutPlan(cut=cut, attach_b=farthest_b_edge(band, cut), attach_a=e)
                    finding = layout_overlaps(unfold(p, plan, band), p.eps, involving="A")
                    if finding is not None:
                        log_info(f"Overlap found after {tried} base(s): z={z}, cut L{cut}, A-edge {e}")
                        return OverlapDemo(p, plan, finding, tried)
    log_info(f"No overlap found in {tried} base(s)")
    return None


@dataclass(frozen=True)
class GenConfig:
    """Parameters of one generated instance"""

    n_b: int
    n_a: int
    z: float = 0.2
    seed: int = 7
    prismoid: bool = False

    def __post_init__(self):
        _check_count(self.n_b, "n_B")
        if not self.prismoid:
            _check_count(self.n_a, "n_A")

    def generate(self) -> NestedPrismatoid:
        if self.prismoid:
            return random_nested_prismoid(self.n_b, self.z, self.seed)
        return random_nested_prismatoid(self.n_b, self.n_a, self.z, self.seed)

    def to_dict(self) -> dict:
        return asdict(self)
