"""
Band-unfolding of nested prismatoids

Cut one lateral edge and all but one edge of B and of A, develop the band
into the plane as a strip of triangles, then hang B from its uncut edge on
the L_B side and A from its uncut edge on the L_A side. Overlap is decided
with shapely (STRtree candidate pairs, clipped intersection areas) against
the (100ε)² area threshold.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import shapely
from shapely import STRtree
from shapely.geometry import Polygon

from .band import Band, EdgeKey, NestedPrismatoid, VertexLabel, build_band, edge_lengths_3d
from .constants import DEFAULT_Z_SWEEP, MARGINAL_FACTOR, OVERLAP_AREA_SCALE
from .errors import InvalidCutEdge, PreconditionViolation, UnverifiedWitness
from .geometry import (
    ConvexPolygon,
    Coord,
    PolyChain,
    RigidMotion2,
    angle_at,
    as_coords,
    overlap_area_threshold,
    resolve_tolerance,
)
from .logging import log_debug, log_warning
from .opening import open_band_report
from .radial import RmWitness, find_rm_property, verify_witness, witness_margin

CutLike = Union[int, EdgeKey]


# =============================================================================
# Types
# =============================================================================


@dataclass(frozen=True)
class CutPlan:
    """One cut lateral edge, plus the single uncut edge of B and of A"""

    cut: int
    attach_b: int
    attach_a: int
    witness: Optional[RmWitness] = None

    def to_dict(self) -> dict:
        data = {"cut": self.cut, "attachB": self.attach_b, "attachA": self.attach_a}
        if self.witness is not None:
            data["witness"] = {"edge": self.witness.edge, "apex": self.witness.apex}
        return data


@dataclass(frozen=True)
class PlacedFace:
    """A face laid in the plane

    `motion` maps the face's intrinsic coordinates onto `points`: a band
    triangle's intrinsic frame has its first vertex at the origin and its
    last on the positive x-axis; B and A use their own coordinates (B
    mirrored, since it is seen from below).
    """

    face_id: str
    kind: str
    labels: Tuple[VertexLabel, ...]
    points: Tuple[Coord, ...]
    motion: RigidMotion2
    parent: Optional[str] = None
    glue: Optional[EdgeKey] = None

    @property
    def array(self) -> np.ndarray:
        return np.array(self.points, dtype=float)

    def position(self, label: VertexLabel) -> np.ndarray:
        return self.array[self.labels.index(label)]

    def to_shapely(self) -> Polygon:
        return Polygon(self.points)


@dataclass(frozen=True)
class Layout:
    """Placed faces in attachment order (band strip first)"""

    faces: Tuple[PlacedFace, ...]
    cut: int
    z: float
    attach_b: Optional[int] = None
    attach_a: Optional[int] = None

    def face(self, face_id: str) -> PlacedFace:
        for f in self.faces:
            if f.face_id == face_id:
                return f
        raise KeyError(face_id)

    def band_faces(self) -> List[PlacedFace]:
        return [f for f in self.faces if f.kind == "band"]

    def attachment_tree(self) -> Dict[str, Tuple[Optional[str], Optional[EdgeKey]]]:
        return {f.face_id: (f.parent, f.glue) for f in self.faces}

    def bounds(self) -> Optional[Tuple[float, float, float, float]]:
        if not self.faces:
            return None
        pts = np.vstack([f.array for f in self.faces])
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    def to_dict(self) -> dict:
        return {
            "z": self.z,
            "cut": self.cut,
            "attachB": self.attach_b,
            "attachA": self.attach_a,
            "faces": [
                {
                    "id": f.face_id,
                    "kind": f.kind,
                    "labels": [f"{kind}{idx}" for kind, idx in f.labels],
                    "points": [list(pt) for pt in f.points],
                    "parent": f.parent,
                    "glue": None if f.glue is None else f"{f.glue[0]}{f.glue[1]}",
                }
                for f in self.faces
            ],
        }


@dataclass(frozen=True)
class OverlapFinding:
    face_a: str
    face_b: str
    area: float
    marginal: bool = False

    def involves(self, face_id: str) -> bool:
        return face_id in (self.face_a, self.face_b)


@dataclass(frozen=True)
class LayoutVerdict:
    overlap: Optional[OverlapFinding]
    worst_pair: Optional[Tuple[str, str]]
    worst_area: float
    threshold: float
    marginal: bool

    @property
    def nonoverlapping(self) -> bool:
        return self.overlap is None


@dataclass(frozen=True)
class DevelopedChain:
    """L_B or L_A as laid out, in strip order, with polygon vertex indices"""

    side: str
    indices: Tuple[int, ...]
    chain: PolyChain

    def angles(self) -> Dict[int, float]:
        """Angle on the left of the strip direction at every internal vertex"""
        return {self.indices[m]: angle_at(self.chain, m, side="left") for m in range(1, self.chain.n - 1)}


@dataclass(frozen=True)
class ZVerdict:
    z: float
    verdict: LayoutVerdict
    cut_safe: bool
    phis_b: Tuple[float, ...] = field(default_factory=tuple)

    @property
    def nonoverlapping(self) -> bool:
        return self.verdict.nonoverlapping


# =============================================================================
# Development
# =============================================================================


def _third_point(p: np.ndarray, q: np.ndarray, d_p: float, d_q: float) -> np.ndarray:
    """Point at distances d_p from p and d_q from q, right of p -> q

    Right of p -> q makes (p, new, q) counter-clockwise.
    """
    d = q - p
    base = float(np.linalg.norm(d))
    u = d / base
    x = (d_p * d_p - d_q * d_q + base * base) / (2 * base)
    h = math.sqrt(max(0.0, d_p * d_p - x * x))
    return p + x * u + h * np.array([u[1], -u[0]])


def _distance3(p: NestedPrismatoid, a: VertexLabel, b: VertexLabel) -> float:
    return float(np.linalg.norm(p.point3(a) - p.point3(b)))


def _resolve_cut(band: Band, cut: CutLike) -> int:
    if isinstance(cut, tuple):
        kind, idx = cut
        if kind != "L":
            raise InvalidCutEdge(f"Edge {kind}{idx} is a base edge; only lateral edges can be cut")
        cut = idx
    if isinstance(cut, bool) or not isinstance(cut, (int, np.integer)):
        raise InvalidCutEdge(f"Cut must be a lateral edge id, got {cut!r}")
    if not 0 <= int(cut) < band.n_lateral:
        raise InvalidCutEdge(f"Lateral edge {cut} does not exist (band has {band.n_lateral})")
    return int(cut)


def strip_order(band: Band, cut: int) -> List[int]:
    """Triangle indices in development order, starting after the cut"""
    return [(cut + m) % band.n_triangles for m in range(band.n_triangles)]


def develop_band(p: NestedPrismatoid, band: Band, cut: CutLike) -> Layout:
    """Lay the band, cut at one lateral edge, isometrically in the plane

    Args:
        p: Nested prismatoid giving the 3D edge lengths
        band: Its band
        cut: Lateral edge id, or ("L", k)

    Returns:
        Band-only Layout; the cut edge runs from the origin along the
        positive x-axis and each later triangle is placed across its shared
        lateral edge, never mirrored

    Raises:
        InvalidCutEdge: If cut is not a lateral edge of the band
    """
    k0 = _resolve_cut(band, cut)
    b0, a0 = band.lateral_labels(k0)
    start = np.zeros(2)
    end = np.array([_distance3(p, b0, a0), 0.0])
    known: Dict[VertexLabel, np.ndarray] = {b0: start, a0: end}

    faces: List[PlacedFace] = []
    parent: Optional[str] = None
    for k in strip_order(band, k0):
        b, new, a = band.triangle_labels(k)
        pb, pa = known[b], known[a]
        d_b, d_a = _distance3(p, b, new), _distance3(p, new, a)
        pn = _third_point(pb, pa, d_b, d_a)

        ab = _distance3(p, b, a)
        intrinsic = [np.zeros(2), _third_point(np.zeros(2), np.array([ab, 0.0]), d_b, d_a), np.array([ab, 0.0])]
        motion = RigidMotion2.from_segment_pair(intrinsic[0], intrinsic[2], pb, pa)

        face_id = f"T{k}"
        faces.append(
            PlacedFace(
                face_id=face_id,
                kind="band",
                labels=(b, new, a),
                points=as_coords([pb, pn, pa]),
                motion=motion,
                parent=parent,
                glue=None if parent is None else ("L", k),
            )
        )
        parent = face_id
        # lateral edge k + 1 is (new, a) after a B-face and (b, new) after an A-face
        known = {b: pb, a: pa, new: pn}

    log_debug(f"Developed band at z={p.z} from cut L{k0}: {len(faces)} triangles")
    return Layout(tuple(faces), k0, p.z)


def _attach_base(p: NestedPrismatoid, band: Band, layout: Layout, kind: str, edge: int) -> PlacedFace:
    poly = p.B if kind == "B" else p.A
    edge %= poly.n
    host = layout.face(f"T{band.base_triangle(kind, edge)}")
    v0, v1 = (kind, edge), (kind, (edge + 1) % poly.n)
    d0, d1 = host.position(v0), host.position(v1)
    motion = RigidMotion2.from_segment_pair(poly.vertex(edge), poly.vertex(edge + 1), d0, d1, reflect=(kind == "B"))
    placed = motion.apply_many(poly.array)
    placed[edge], placed[(edge + 1) % poly.n] = d0, d1
    return PlacedFace(
        face_id=kind,
        kind=kind,
        labels=tuple((kind, i) for i in range(poly.n)),
        points=as_coords(placed),
        motion=motion,
        parent=host.face_id,
        glue=(kind, edge),
    )


def farthest_b_edge(band: Band, cut: int) -> int:
    """B-edge whose triangle sits farthest along the strip from either cut end (lowest index on ties)"""
    n = band.n_triangles
    best, best_dist = 0, -1.0
    for i in range(band.prismatoid.B.n):
        m = (band.base_triangle("B", i) - cut) % n
        dist = min(m + 0.5, n - m - 0.5)
        if dist > best_dist:
            best, best_dist = i, dist
    return best


def b_edges_by_distance(band: Band, cut: int) -> List[int]:
    """All B-edges, farthest from the cut first"""
    n = band.n_triangles

    def dist(i: int) -> float:
        m = (band.base_triangle("B", i) - cut) % n
        return min(m + 0.5, n - m - 0.5)

    return sorted(range(band.prismatoid.B.n), key=lambda i: (-dist(i), i))


# =============================================================================
# Overlap
# =============================================================================


def _face_pairs(layout: Layout) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Candidate face pairs (i < j) with bounding geometry intersecting, and their overlap areas"""
    geoms = np.array([f.to_shapely() for f in layout.faces], dtype=object)
    if len(geoms) < 2:
        empty = np.array([], dtype=int)
        return empty, empty, np.array([], dtype=float)
    tree = STRtree(geoms)
    left, right = tree.query(geoms, predicate="intersects")
    keep = left < right
    left, right = left[keep], right[keep]
    order = np.lexsort((right, left))
    left, right = left[order], right[order]
    areas = shapely.area(shapely.intersection(geoms[left], geoms[right]))
    return left, right, np.asarray(areas, dtype=float)


def check_layout(layout: Layout, eps: Optional[float] = None, involving: Optional[str] = None) -> LayoutVerdict:
    """Full overlap verdict for a layout

    Args:
        layout: Layout to check
        eps: Tolerance (default: global ε)
        involving: Only consider pairs containing this face id

    Returns:
        LayoutVerdict with the first pair above threshold (in face order),
        the worst pair overall, and a marginal flag when the square root
        of the worst area is within 10ε of the 100ε threshold length
    """
    e = resolve_tolerance(eps)
    threshold = overlap_area_threshold(e)
    left, right, areas = _face_pairs(layout)
    ids = [f.face_id for f in layout.faces]
    if involving is not None:
        mask = np.array([involving in (ids[i], ids[j]) for i, j in zip(left, right)], dtype=bool)
        left, right, areas = left[mask], right[mask], areas[mask]

    if len(areas) == 0:
        return LayoutVerdict(None, None, 0.0, threshold, False)

    worst = int(np.argmax(areas))
    worst_area = float(areas[worst])
    marginal = abs(math.sqrt(worst_area) - OVERLAP_AREA_SCALE * e) <= MARGINAL_FACTOR * e
    overlap = None
    above = np.flatnonzero(areas > threshold)
    if len(above):
        first = int(above[0])
        overlap = OverlapFinding(ids[left[first]], ids[right[first]], float(areas[first]), marginal)
    return LayoutVerdict(overlap, (ids[left[worst]], ids[right[worst]]), worst_area, threshold, marginal)


def layout_overlaps(layout: Layout, eps: Optional[float] = None, involving: Optional[str] = None) -> Optional[OverlapFinding]:
    """First face pair sharing interior points above tolerance, or None"""
    return check_layout(layout, eps, involving).overlap


def find_safe_cuts(p: NestedPrismatoid, band: Optional[Band] = None, eps: Optional[float] = None) -> List[int]:
    """Lateral edges whose band-only development does not overlap

    Returns:
        Sorted lateral edge ids; empty when no cut is safe at this height
    """
    band = band or build_band(p)
    e = p.eps if eps is None else eps
    safe = [k for k in range(band.n_lateral) if layout_overlaps(develop_band(p, band, k), e) is None]
    log_debug(f"Safe cuts at z={p.z}: {len(safe)}/{band.n_lateral}")
    return safe


# =============================================================================
# Planning and unfolding
# =============================================================================


def choose_witness(A: ConvexPolygon, witnesses: Sequence[RmWitness]) -> Optional[RmWitness]:
    """Witness with the largest RM slack; ties go to the lowest edge, then apex"""
    if not witnesses:
        return None
    return max(witnesses, key=lambda w: (witness_margin(A, w), -w.edge, -w.apex))


def compatible_cuts(band: Band, witness: RmWitness) -> List[int]:
    """Lateral edges incident to the witness apex on L_A"""
    return band.lateral_edges_at_a(witness.apex)


def plan_unfold(
    p: NestedPrismatoid,
    band: Optional[Band] = None,
    witness: Optional[RmWitness] = None,
    cut: Optional[CutLike] = None,
    attach_b: Optional[int] = None,
    eps: Optional[float] = None,
) -> CutPlan:
    """Choose a CutPlan for a prismatoid

    Args:
        p: Prismatoid at the height the plan is checked at
        band: Its band (built when omitted)
        witness: RM witness of A (best one when omitted)
        cut: Lateral edge to cut (a safe cut at the witness apex when omitted)
        attach_b: Uncut B-edge (farthest from the cut when omitted)
        eps: Overlap tolerance (default: the instance's ε)

    Raises:
        UnverifiedWitness: If A has no RM witness or the given one fails
        PreconditionViolation: If no cut is safe at this height
        InvalidCutEdge: If an explicit cut is not a lateral edge
    """
    band = band or build_band(p)
    if witness is None:
        witness = choose_witness(p.A, find_rm_property(p.A))
        if witness is None:
            raise UnverifiedWitness("Top polygon has no RM witness")
    elif not verify_witness(p.A, witness):
        raise UnverifiedWitness(f"Edge {witness.edge} with apex {witness.apex} is not an RM witness of A")

    if cut is None:
        safe = find_safe_cuts(p, band, eps)
        if not safe:
            raise PreconditionViolation(f"No lateral edge is a safe cut at z={p.z}")
        compatible = [k for k in compatible_cuts(band, witness) if k in safe]
        if compatible:
            cut_id = compatible[0]
        else:
            cut_id = safe[0]
            log_warning(f"No safe cut at apex a{witness.apex}; falling back to L{cut_id}")
    else:
        cut_id = _resolve_cut(band, cut)

    if attach_b is None:
        attach_b = farthest_b_edge(band, cut_id)
    return CutPlan(cut=cut_id, attach_b=attach_b % p.B.n, attach_a=witness.edge, witness=witness)


def unfold(p: NestedPrismatoid, plan: CutPlan, band: Optional[Band] = None) -> Layout:
    """Band-unfolding: the developed band with B and A attached

    Raises:
        InvalidCutEdge: If the plan's cut is not a lateral edge
        UnverifiedWitness: If the plan's witness fails re-verification or
            does not match the A attachment edge
    """
    band = band or build_band(p)
    if plan.witness is not None:
        if plan.witness.edge != plan.attach_a or not verify_witness(p.A, plan.witness):
            raise UnverifiedWitness(
                f"Witness (edge {plan.witness.edge}, apex {plan.witness.apex}) does not verify for A-edge {plan.attach_a}"
            )
    strip = develop_band(p, band, plan.cut)
    b_face = _attach_base(p, band, strip, "B", plan.attach_b)
    a_face = _attach_base(p, band, strip, "A", plan.attach_a)
    return Layout(strip.faces + (b_face, a_face), strip.cut, p.z, plan.attach_b % p.B.n, plan.attach_a % p.A.n)


def unfold_with_fallback(p: NestedPrismatoid, plan: CutPlan, band: Optional[Band] = None) -> Tuple[Layout, CutPlan, List[int]]:
    """Unfold, moving B to the next-farthest edge while B overlaps the band

    Returns:
        (layout, plan actually used, B-edges that overlapped)
    """
    band = band or build_band(p)
    layout = unfold(p, plan, band)
    rejected: List[int] = []
    if layout_overlaps(layout, p.eps, involving="B") is None:
        return layout, plan, rejected
    rejected.append(plan.attach_b)
    for i in b_edges_by_distance(band, plan.cut):
        if i in rejected:
            continue
        candidate = CutPlan(plan.cut, i, plan.attach_a, plan.witness)
        trial = unfold(p, candidate, band)
        if layout_overlaps(trial, p.eps, involving="B") is None:
            log_warning(f"B overlapped from edge {plan.attach_b}; attached at edge {i} instead")
            return trial, candidate, rejected
        rejected.append(i)
    return layout, plan, rejected


def z_sweep(
    B: ConvexPolygon,
    A: ConvexPolygon,
    plan: CutPlan,
    z_values: Sequence[float] = tuple(DEFAULT_Z_SWEEP),
    eps: Optional[float] = None,
) -> List[ZVerdict]:
    """Unfold one (B, A) pair with one plan at every height

    Raises:
        PreconditionViolation: If the band's combinatorics change across the sweep
    """
    reference = None
    results = []
    for z in z_values:
        p = NestedPrismatoid(B, A, z)
        band = build_band(p)
        if reference is None:
            reference = band.signature()
        elif band.signature() != reference:
            raise PreconditionViolation(f"Band combinatorics change at z={z}")
        e = p.eps if eps is None else eps
        verdict = check_layout(unfold(p, plan, band), e)
        cut_safe = layout_overlaps(develop_band(p, band, plan.cut), e) is None
        phis = tuple(r.phi for r in open_band_report(p, band, "B").records)
        results.append(ZVerdict(float(z), verdict, cut_safe, phis))
        log_debug(f"z={z}: {'ok' if verdict.nonoverlapping else verdict.overlap}, cut safe={cut_safe}")
    return results


# =============================================================================
# Developed chains and isometry
# =============================================================================


def l_b_chain(layout: Layout) -> DevelopedChain:
    """L_B as developed: starts at the cut's B-vertex, one step per B-face"""
    faces = layout.band_faces()
    indices = [faces[0].labels[0][1]]
    points = [faces[0].points[0]]
    for f in faces:
        if f.labels[1][0] == "B":
            indices.append(f.labels[1][1])
            points.append(f.points[1])
    return DevelopedChain("B", tuple(indices), PolyChain(tuple(points)))


def l_a_chain(layout: Layout) -> DevelopedChain:
    """L_A as developed: starts at the cut's A-vertex, one step per A-face"""
    faces = layout.band_faces()
    indices = [faces[0].labels[2][1]]
    points = [faces[0].points[2]]
    for f in faces:
        if f.labels[1][0] == "A":
            indices.append(f.labels[1][1])
            points.append(f.points[1])
    return DevelopedChain("A", tuple(indices), PolyChain(tuple(points)))


def isometry_error(p: NestedPrismatoid, band: Band, layout: Layout) -> float:
    """Largest relative edge-length error of any placed face against its 3D face"""
    lengths = edge_lengths_3d(p, band)
    lateral = {band.lateral_labels(k): lengths[("L", k)] for k in range(band.n_lateral)}
    worst = 0.0
    for f in layout.faces:
        pts = f.array
        for m in range(len(f.labels)):
            u, w = f.labels[m], f.labels[(m + 1) % len(f.labels)]
            planar = float(np.linalg.norm(pts[(m + 1) % len(pts)] - pts[m]))
            if u[0] == w[0]:
                first = u if (u[1] + 1) % (p.B.n if u[0] == "B" else p.A.n) == w[1] else w
                expected = lengths[(first[0], first[1])]
            else:
                pair = (u, w) if u[0] == "B" else (w, u)
                expected = lateral.get(pair, _distance3(p, u, w))
            worst = max(worst, abs(planar - expected) / expected)
    return worst
