"""
Nested prismatoids and their lateral band

A nested prismatoid is the convex hull of a base polygon B at height 0 and a
top polygon A at height z whose projection lies strictly inside B. Its
lateral faces form a cyclic fan of triangles (the band) between the chains
L_B and L_A. The band is found by a pivot walk around the two polygons
rather than a general 3D hull.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .constants import REFERENCE_HEIGHT
from .errors import DegenerateHeight, NestingViolation
from .geometry import ConvexPolygon, cross2, get_tolerance, point_strictly_inside
from .logging import log_debug

VertexLabel = Tuple[str, int]  # ("B", i) or ("A", j)
EdgeKey = Tuple[str, int]  # ("B", i), ("A", j) or ("L", k)


@dataclass(frozen=True)
class NestedPrismatoid:
    """B in the plane z=0, A lifted to height z, A strictly inside B"""

    B: ConvexPolygon
    A: ConvexPolygon
    z: float

    def __post_init__(self):
        z = float(self.z)
        if not np.isfinite(z) or z < 0:
            raise DegenerateHeight(f"Height must be finite and non-negative, got {self.z}")
        object.__setattr__(self, "z", z)
        eps = self.eps
        for j, a in enumerate(self.A.vertices):
            if not point_strictly_inside(self.B, a, eps):
                raise NestingViolation(f"Vertex {j} of A {a} is not strictly inside B")

    @property
    def eps(self) -> float:
        """Tolerance scaled to this instance's diameter"""
        return get_tolerance() * self.B.diameter()

    @property
    def is_flat(self) -> bool:
        return self.z == 0.0

    def with_height(self, z: float) -> "NestedPrismatoid":
        return NestedPrismatoid(self.B, self.A, z)

    def point3(self, label: VertexLabel) -> np.ndarray:
        kind, idx = label
        if kind == "B":
            x, y = self.B.vertices[idx % self.B.n]
            return np.array([x, y, 0.0])
        x, y = self.A.vertices[idx % self.A.n]
        return np.array([x, y, self.z])

    def point2(self, label: VertexLabel) -> np.ndarray:
        kind, idx = label
        poly = self.B if kind == "B" else self.A
        return poly.vertex(idx)


@dataclass(frozen=True)
class BandTriangle:
    """One lateral triangle

    kind "B": base edge b_base b_{base+1}, apex a_apex.
    kind "A": base edge a_base a_{base+1}, apex b_apex.
    """

    kind: str
    base: int
    apex: int
    coplanar: bool = False

    @property
    def tag(self) -> Tuple[str, int, int]:
        return (self.kind, self.base, self.apex)


@dataclass(frozen=True)
class Band:
    """Cyclic fan of lateral triangles

    Lateral edge k joins (b_i, a_j) and sits between triangles k-1 and k, so
    triangle k has lateral edges k and k+1 (cyclically).
    """

    prismatoid: NestedPrismatoid
    triangles: Tuple[BandTriangle, ...]
    lateral: Tuple[Tuple[int, int], ...]

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def n_lateral(self) -> int:
        return len(self.lateral)

    def lateral_labels(self, k: int) -> Tuple[VertexLabel, VertexLabel]:
        i, j = self.lateral[k % self.n_lateral]
        return ("B", i), ("A", j)

    def triangle_labels(self, k: int) -> Tuple[VertexLabel, VertexLabel, VertexLabel]:
        """Vertex labels of triangle k, ccw seen from outside the solid

        Order is (b of lateral edge k, new vertex, a of lateral edge k); the
        new vertex is the one not on lateral edge k.
        """
        t = self.triangles[k]
        i, j = self.lateral[k]
        if t.kind == "B":
            new = ("B", (i + 1) % self.prismatoid.B.n)
        else:
            new = ("A", (j + 1) % self.prismatoid.A.n)
        return ("B", i), new, ("A", j)

    def triangle_points_3d(self, k: int) -> np.ndarray:
        return np.array([self.prismatoid.point3(lbl) for lbl in self.triangle_labels(k)])

    def triangle_points_2d(self, k: int) -> np.ndarray:
        return np.array([self.prismatoid.point2(lbl) for lbl in self.triangle_labels(k)])

    def chain_B(self) -> Tuple[int, ...]:
        """L_B: B-vertex indices in walk order"""
        return _dedupe(i for i, _ in self.lateral)

    def chain_A(self) -> Tuple[int, ...]:
        """L_A: A-vertex indices in walk order"""
        return _dedupe(j for _, j in self.lateral)

    def lateral_edges_at_b(self, i: int) -> List[int]:
        """Lateral edges at b_i in ccw order (the run may wrap past edge 0)"""
        return _cyclic_run([k for k, (bi, _) in enumerate(self.lateral) if bi == i])

    def lateral_edges_at_a(self, j: int) -> List[int]:
        """Lateral edges at a_j in ccw order (the run may wrap past edge 0)"""
        return _cyclic_run([k for k, (_, aj) in enumerate(self.lateral) if aj == j])

    def fan_at_b(self, i: int) -> List[int]:
        """A-vertex indices joined to b_i, in walk (ccw) order"""
        return [self.lateral[k][1] for k in self.lateral_edges_at_b(i)]

    def fan_at_a(self, j: int) -> List[int]:
        """B-vertex indices joined to a_j, in walk (ccw) order"""
        return [self.lateral[k][0] for k in self.lateral_edges_at_a(j)]

    def base_triangle(self, kind: str, edge: int) -> int:
        """Index of the triangle whose base is the given B or A edge"""
        for k, t in enumerate(self.triangles):
            if t.kind == kind and t.base == edge:
                return k
        raise KeyError((kind, edge))

    def signature(self) -> Tuple[Tuple[str, int, int], ...]:
        return tuple(t.tag for t in self.triangles)

    def coplanar_count(self) -> int:
        return sum(1 for t in self.triangles if t.coplanar)


def _cyclic_run(ks: List[int]) -> List[int]:
    """Rotate sorted indices of one cyclic run so it reads contiguously"""
    for t in range(len(ks) - 1):
        if ks[t + 1] != ks[t] + 1:
            return ks[t + 1 :] + ks[: t + 1]
    return ks


def _dedupe(seq) -> Tuple[int, ...]:
    out: List[int] = []
    for v in seq:
        if not out or out[-1] != v:
            out.append(v)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return tuple(out)


def _start_vertex(B: ConvexPolygon, A: ConvexPolygon, eps: float) -> int:
    """A vertex extreme in the outward normal of B-edge 0 (first one on ties)"""
    normal = B.outward_normal(0)
    heights = A.array @ normal
    best = float(heights.max())
    for j, h in enumerate(heights):
        if h >= best - eps:
            return j
    return int(np.argmax(heights))


def _edge_turn(B: ConvexPolygon, A: ConvexPolygon, i: int, j: int) -> float:
    """cross(unit B-edge i, A-edge j): > 0 when A-edge j turns after B-edge i

    Positive exactly when a_{j+1} lies on the inner side of the plane through
    b_i, b_{i+1}, a_j, for every height z > 0.
    """
    b0, b1 = B.edge(i)
    a0, a1 = A.edge(j)
    return cross2((b1 - b0) / np.linalg.norm(b1 - b0), a1 - a0)


def _walk(B: ConvexPolygon, A: ConvexPolygon, eps: float) -> Tuple[List[BandTriangle], List[Tuple[int, int]]]:
    nB, nA = B.n, A.n
    i, j = 0, _start_vertex(B, A, eps)
    steps_b = steps_a = 0
    tags: List[Tuple[str, int, int]] = []
    lateral: List[Tuple[int, int]] = []

    while steps_b < nB or steps_a < nA:
        lateral.append((i % nB, j % nA))
        if steps_b == nB:
            take_b = False
        elif steps_a == nA:
            take_b = True
        else:
            # parallel edges take the A-face first: diagonal from the quad's first B-vertex
            take_b = _edge_turn(B, A, i % nB, j % nA) > eps

        if take_b:
            tags.append(("B", i % nB, j % nA))
            i += 1
            steps_b += 1
        else:
            tags.append(("A", j % nA, i % nB))
            j += 1
            steps_a += 1

    # neighbouring B- and A-faces over parallel edges form one planar quad
    flags = [False] * len(tags)
    for k, tag in enumerate(tags):
        other = tags[(k + 1) % len(tags)]
        if tag[0] == other[0]:
            continue
        b_edge = tag[1] if tag[0] == "B" else other[1]
        a_edge = tag[1] if tag[0] == "A" else other[1]
        if abs(_edge_turn(B, A, b_edge, a_edge)) <= eps:
            flags[k] = flags[(k + 1) % len(tags)] = True

    triangles = [BandTriangle(kind, base, apex, flag) for (kind, base, apex), flag in zip(tags, flags)]
    return triangles, lateral


def build_band(p: NestedPrismatoid) -> Band:
    """Lateral band of a nested prismatoid

    Args:
        p: Nested prismatoid (z = 0 gives the flat, doubly-covered band)

    Returns:
        Band with n_B + n_A triangles; the two triangles of every planar
        lateral quadrilateral are flagged coplanar

    Notes:
        The walk starts at lateral edge (b_0, a_j*) with a_j* extreme in the
        outward normal of B-edge 0 and advances whichever polygon's next
        edge turns first. Quadrilaterals are split by the diagonal from their
        first B-vertex. The flat band reuses the walk at REFERENCE_HEIGHT.
    """
    source = p.with_height(REFERENCE_HEIGHT) if p.is_flat else p
    triangles, lateral = _walk(source.B, source.A, source.eps)
    band = Band(p, tuple(triangles), tuple(lateral))
    log_debug(
        f"Band: {band.n_triangles} triangles, {band.coplanar_count()} coplanar "
        f"(n_B={p.B.n}, n_A={p.A.n}, z={p.z})"
    )
    return band


def band_combinatorics(p: NestedPrismatoid) -> Tuple[Tuple[str, int, int], ...]:
    """Canonical tag sequence of the band: (kind, base edge, apex) per triangle"""
    return build_band(p).signature()


def edge_lengths_3d(p: NestedPrismatoid, band: Band) -> Dict[EdgeKey, float]:
    """Euclidean lengths of every band edge with A at height z"""
    lengths: Dict[EdgeKey, float] = {}
    for i in range(p.B.n):
        lengths[("B", i)] = float(np.linalg.norm(p.point3(("B", i + 1)) - p.point3(("B", i))))
    for j in range(p.A.n):
        lengths[("A", j)] = float(np.linalg.norm(p.point3(("A", j + 1)) - p.point3(("A", j))))
    for k in range(band.n_lateral):
        b, a = band.lateral_labels(k)
        lengths[("L", k)] = float(np.linalg.norm(p.point3(a) - p.point3(b)))
    return lengths


def hull_validity_margin(p: NestedPrismatoid, band: Band) -> float:
    """Worst signed distance of any prismatoid vertex outside a lateral face plane

    Returns:
        Maximum over lateral triangles and vertices of the outward distance;
        a valid band has a margin at most ε. Flat bands return 0.
    """
    if p.is_flat:
        return 0.0
    verts = np.vstack(
        [
            np.column_stack([p.B.array, np.zeros(p.B.n)]),
            np.column_stack([p.A.array, np.full(p.A.n, p.z)]),
        ]
    )
    worst = -np.inf
    for k in range(band.n_triangles):
        t0, t1, t2 = band.triangle_points_3d(k)
        normal = np.cross(t1 - t0, t2 - t0)
        normal /= np.linalg.norm(normal)
        worst = max(worst, float(((verts - t0) @ normal).max()))
    return worst


def face_normal_z(p: NestedPrismatoid, band: Band, k: int) -> Optional[float]:
    """z-component of triangle k's unit outward normal (None when flat)"""
    if p.is_flat:
        return None
    t0, t1, t2 = band.triangle_points_3d(k)
    normal = np.cross(t1 - t0, t2 - t0)
    return float(normal[2] / np.linalg.norm(normal))
