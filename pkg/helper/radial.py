"""
Radial monotonicity of polygonal chains

A chain is radially monotone from its start v when every circle centred at v
meets it at most once; it is RM when that holds from every vertex. This
module tests RM, searches polygons for an RM witness (an edge and an apex
whose two boundary paths are both RM), opens convex chains, checks that an
opened chain only touches its original at the first opened joint, and builds
the involute that bounds every opening.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import shapely
from shapely.geometry import LineString

from .constants import CROSSING_SEARCH_STEPS, INVOLUTE_ARC_SAMPLES
from .errors import ConvexityViolation, DegenerateSegment, InvalidOpening
from .geometry import ConvexPolygon, PolyChain, resolve_tolerance, as_array
from .logging import log_debug


# =============================================================================
# Radial monotonicity
# =============================================================================


def is_rm_from(chain: PolyChain, v: Optional[Sequence[float]] = None, eps: Optional[float] = None) -> bool:
    """True iff distance from v never decreases along the chain

    Args:
        chain: Directed chain
        v: Centre (default: the chain's first vertex)
        eps: Tolerance for the per-segment test

    Returns:
        True when every segment (p, q) satisfies dot(q - p, p - v) >= 0 within eps

    Raises:
        DegenerateSegment: If a segment is shorter than eps
    """
    e = resolve_tolerance(eps)
    pts = chain.array
    centre = pts[0] if v is None else as_array(v)
    for p, q in zip(pts, pts[1:]):
        d = q - p
        length = float(np.linalg.norm(d))
        if length < e:
            raise DegenerateSegment(f"Segment {tuple(p)} -> {tuple(q)} is shorter than tolerance")
        if float(np.dot(d, p - centre)) / length < -e:
            return False
    return True


def is_rm(chain: PolyChain, eps: Optional[float] = None) -> bool:
    """True iff every suffix of the chain is RM from its own first vertex"""
    return all(is_rm_from(chain.suffix(i), eps=eps) for i in range(chain.n - 1))


def rm_margin(chain: PolyChain) -> float:
    """Worst cosine between a segment and the radial direction from any earlier vertex

    Negative values mean the chain is not RM; single segments return 1.
    """
    pts = chain.array
    worst = 1.0
    for i in range(len(pts) - 1):
        for s in range(i + 1, len(pts) - 1):
            p, q = pts[s], pts[s + 1]
            radial = p - pts[i]
            denom = np.linalg.norm(q - p) * np.linalg.norm(radial)
            if denom > 0:
                worst = min(worst, float(np.dot(q - p, radial) / denom))
    return worst


def acute_vertices(chain: PolyChain) -> List[int]:
    """Internal vertices whose angle is below π/2"""
    return [i for i, ang in enumerate(chain.angles(), start=1) if ang < math.pi / 2]


# =============================================================================
# RM-property of polygons
# =============================================================================


@dataclass(frozen=True)
class RmWitness:
    """Edge (a, a+1) and apex c of a polygon, both boundary paths to c RM"""

    edge: int
    apex: int
    n: int

    @property
    def a(self) -> int:
        return self.edge

    @property
    def b(self) -> int:
        return (self.edge + 1) % self.n


def boundary_paths(poly: ConvexPolygon, edge: int, apex: int) -> Tuple[PolyChain, PolyChain]:
    """Directed boundary paths for a witness candidate

    Returns:
        (cw path a, a-1, ..., c; ccw path b, b+1, ..., c) with (a, b) the
        given edge
    """
    n = poly.n
    a, b = edge % n, (edge + 1) % n
    cw = [a]
    while cw[-1] != apex:
        cw.append((cw[-1] - 1) % n)
    ccw = [b]
    while ccw[-1] != apex:
        ccw.append((ccw[-1] + 1) % n)
    return (
        PolyChain(tuple(poly.vertices[i] for i in cw)),
        PolyChain(tuple(poly.vertices[i] for i in ccw)),
    )


def verify_witness(poly: ConvexPolygon, witness: RmWitness, eps: Optional[float] = None) -> bool:
    if witness.n != poly.n or witness.apex in (witness.a, witness.b):
        return False
    cw, ccw = boundary_paths(poly, witness.edge, witness.apex)
    return is_rm(cw, eps) and is_rm(ccw, eps)


def witness_margin(poly: ConvexPolygon, witness: RmWitness) -> float:
    cw, ccw = boundary_paths(poly, witness.edge, witness.apex)
    return min(rm_margin(cw), rm_margin(ccw))


def find_rm_property(poly: ConvexPolygon, eps: Optional[float] = None) -> List[RmWitness]:
    """Every (edge, apex) witness of the RM-property, by exhaustive search

    Returns:
        Witnesses ordered by edge then apex; empty when the polygon lacks
        the RM-property
    """
    n = poly.n
    witnesses = []
    for edge in range(n):
        for apex in range(n):
            w = RmWitness(edge, apex, n)
            if apex in (w.a, w.b):
                continue
            if verify_witness(poly, w, eps):
                witnesses.append(w)
    log_debug(f"RM-property search on {n}-gon: {len(witnesses)} witness(es)")
    return witnesses


# =============================================================================
# Opening chains
# =============================================================================


def curl_sign(chain: PolyChain, eps: Optional[float] = None) -> int:
    """-1 for a cw-curling chain, +1 for ccw (cw when straight)

    Raises:
        ConvexityViolation: If the chain turns both ways
    """
    e = resolve_tolerance(eps)
    signs = {int(np.sign(t)) for t in chain.turns() if abs(t) > e}
    if len(signs) > 1:
        raise ConvexityViolation("Chain turns both ways (not convex)")
    return signs.pop() if signs else -1


def open_chain(chain: PolyChain, omegas: Sequence[float], eps: Optional[float] = None) -> PolyChain:
    """Open a convex chain by ω_i at each internal vertex

    Args:
        chain: Convex chain (curling either way)
        omegas: One non-negative ω per internal vertex
        eps: Tolerance for the ω and α + ω bounds

    Returns:
        Chain with equal segment lengths, angles α_i + ω_i, and the first
        segment unchanged

    Raises:
        InvalidOpening: If an ω is negative, the count is wrong, or α_i + ω_i > π
        ConvexityViolation: If the chain is not convex
    """
    e = resolve_tolerance(eps)
    omegas = [float(w) for w in omegas]
    if len(omegas) != chain.n - 2:
        raise InvalidOpening(f"Expected {chain.n - 2} opening amounts, got {len(omegas)}")
    turns = chain.turns()
    sign = curl_sign(chain, eps)

    new_turns = []
    for i, (t, w) in enumerate(zip(turns, omegas), start=1):
        alpha = math.pi - abs(t)
        if w < -e:
            raise InvalidOpening(f"Opening at vertex {i} is negative ({w})")
        if alpha + w > math.pi + e:
            raise InvalidOpening(f"Vertex {i} would open past π (α={alpha:.6f}, ω={w:.6f})")
        new_turns.append(sign * max(0.0, abs(t) - w))

    pts = chain.array
    lengths = chain.segment_lengths()
    d0 = pts[1] - pts[0]
    heading = math.atan2(d0[1], d0[0])
    out = [pts[0], pts[1]]
    for length, turn in zip(lengths[1:], new_turns):
        heading += turn
        out.append(out[-1] + length * np.array([math.cos(heading), math.sin(heading)]))
    return PolyChain(tuple(map(tuple, out)))


def check_noncrossing(
    chain: PolyChain, omegas: Sequence[float], eps: Optional[float] = None
) -> bool:
    """True iff the opened chain meets the original only at the first opened joint

    The prefix up to the first vertex with ω > eps is shared by construction;
    the suffixes from that vertex are intersected.
    """
    e = resolve_tolerance(eps)
    opened = open_chain(chain, omegas, eps)
    first = next((i for i, w in enumerate(omegas, start=1) if w > e), None)
    if first is None:
        return True

    hinge = chain.array[first]
    original = LineString(chain.vertices[first:])
    moved = LineString(opened.vertices[first:])
    touching = shapely.get_coordinates(original.intersection(moved))
    scale = max(1.0, chain.length())
    return bool(np.all(np.linalg.norm(touching - hinge, axis=1) <= 1e3 * e * scale))


def find_crossing_opening(
    chain: PolyChain, steps: int = CROSSING_SEARCH_STEPS, eps: Optional[float] = None
) -> Optional[List[float]]:
    """Search ω_1 ∈ (0, π - α_1] (other joints fixed) for an opening that crosses

    Returns:
        The first crossing opening vector, or None
    """
    if chain.n < 3:
        return None
    alpha1 = chain.angles()[0]
    room = math.pi - alpha1
    for s in range(1, steps + 1):
        omegas = [room * s / steps] + [0.0] * (chain.n - 3)
        if not check_noncrossing(chain, omegas, eps):
            return omegas
    return None


# =============================================================================
# Involute
# =============================================================================


@dataclass(frozen=True)
class InvoluteArc:
    centre: Tuple[float, float]
    radius: float
    start_angle: float
    sweep: float

    def point(self, t: float) -> np.ndarray:
        ang = self.start_angle + t * self.sweep
        return np.array(self.centre) + self.radius * np.array([math.cos(ang), math.sin(ang)])

    def sample(self, count: int = INVOLUTE_ARC_SAMPLES) -> np.ndarray:
        return np.array([self.point(t) for t in np.linspace(0.0, 1.0, count)])


@dataclass(frozen=True)
class Involute:
    """Arcs traced by the chain's endpoint as joints straighten from the far end

    arcs[k - 1] is centred at internal vertex v_k with radius equal to the
    chain length beyond v_k; it runs from the direction of segment k to the
    direction of segment k - 1.
    """

    arcs: Tuple[InvoluteArc, ...]

    def point(self, k: int, t: float) -> np.ndarray:
        return self.arcs[k - 1].point(t)

    def junctions(self) -> List[np.ndarray]:
        """Arc endpoints in unspooling order, starting at the chain's endpoint"""
        pts = [self.arcs[-1].point(0.0)]
        for arc in reversed(self.arcs):
            pts.append(arc.point(1.0))
        return pts

    def radii(self) -> List[float]:
        return [arc.radius for arc in self.arcs]


def involute_of(chain: PolyChain) -> Involute:
    """Involute of a convex chain with at least two segments

    Raises:
        DegenerateSegment: If the chain has fewer than two segments or a
            zero-length segment
        ConvexityViolation: If the chain is not convex
    """
    if chain.n < 3:
        raise DegenerateSegment("Involute needs at least two segments")
    curl_sign(chain)
    pts = chain.array
    lengths = chain.segment_lengths()
    if np.any(lengths <= resolve_tolerance(None)):
        raise DegenerateSegment("Chain has a zero-length segment")
    turns = chain.turns()
    arcs = []
    for k in range(1, chain.n - 1):
        d = pts[k + 1] - pts[k]
        arcs.append(
            InvoluteArc(
                centre=(float(pts[k][0]), float(pts[k][1])),
                radius=float(lengths[k:].sum()),
                start_angle=math.atan2(d[1], d[0]),
                sweep=-float(turns[k - 1]),
            )
        )
    return Involute(tuple(arcs))
