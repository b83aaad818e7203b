"""
Planar and spatial primitives for prismatoid-band-tools

Immutable point, chain, polygon and rigid-motion types plus the tolerance-aware
predicates every other module builds on. All values are plain tuples under the
hood; `.array` gives a numpy view for vector math.
"""

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from shapely.geometry import LineString, Polygon

from .constants import DEFAULT_TOLERANCE, OVERLAP_AREA_SCALE
from .errors import (
    ConvexityViolation,
    DegenerateInput,
    DegenerateSegment,
    DegenerateTriangle,
    IndexOutOfRange,
    InvalidParameter,
)

Coord = Tuple[float, float]

_TOLERANCE = DEFAULT_TOLERANCE


def set_tolerance(eps: float) -> None:
    """Set the global tolerance ε (absolute, in units of a diameter-1 instance)

    Raises:
        InvalidParameter: If eps is not a positive finite number
    """
    global _TOLERANCE
    if not (math.isfinite(eps) and eps > 0):
        raise InvalidParameter(f"Tolerance must be positive and finite, got {eps}")
    _TOLERANCE = float(eps)


def get_tolerance() -> float:
    """Get the global tolerance ε"""
    return _TOLERANCE


def resolve_tolerance(eps: Optional[float]) -> float:
    """eps itself, or the global ε when eps is None"""
    return _TOLERANCE if eps is None else eps


def overlap_area_threshold(eps: Optional[float] = None) -> float:
    """Intersection area above which two faces count as overlapping"""
    return (OVERLAP_AREA_SCALE * resolve_tolerance(eps)) ** 2


# =============================================================================
# Points
# =============================================================================


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DegenerateInput(f"Non-finite point ({self.x}, {self.y})")

    @property
    def array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise DegenerateInput(f"Non-finite point ({self.x}, {self.y}, {self.z})")

    @property
    def array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z


PointLike = Union[Point2, Point3, Sequence[float], np.ndarray]


def as_array(p: PointLike) -> np.ndarray:
    """Convert any point-like value to a float numpy array"""
    if isinstance(p, (Point2, Point3)):
        return p.array
    return np.asarray(p, dtype=float)


def _coords(points: Iterable[PointLike]) -> Tuple[Coord, ...]:
    out = []
    for p in points:
        a = as_array(p)
        if a.shape != (2,) or not np.all(np.isfinite(a)):
            raise DegenerateInput(f"Expected a finite 2D point, got {p!r}")
        out.append((float(a[0]), float(a[1])))
    return tuple(out)


def cross2(u: np.ndarray, v: np.ndarray) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


# =============================================================================
# Predicates
# =============================================================================


def orientation(p: PointLike, q: PointLike, r: PointLike, eps: Optional[float] = None) -> int:
    """Sign of the signed area of triangle pqr

    Args:
        p, q, r: Planar points
        eps: Tolerance (default: global ε)

    Returns:
        +1 for a ccw turn, -1 for cw, 0 when collinear within tolerance

    Notes:
        The triangle counts as collinear when its smallest altitude (twice the
        area over the longest side) is at most eps. That quantity is symmetric
        in the three points, so swapping any two arguments negates the result.
    """
    p, q, r = as_array(p), as_array(q), as_array(r)
    area2 = cross2(q - p, r - p)
    longest = max(np.linalg.norm(q - p), np.linalg.norm(r - q), np.linalg.norm(p - r))
    if longest == 0.0 or abs(area2) / longest <= resolve_tolerance(eps):
        return 0
    return 1 if area2 > 0 else -1


def segments_intersect(
    p1: PointLike, p2: PointLike, q1: PointLike, q2: PointLike, eps: Optional[float] = None
) -> bool:
    """True if closed segments p1p2 and q1q2 share a point (touching counts)"""
    o1 = orientation(p1, p2, q1, eps)
    o2 = orientation(p1, p2, q2, eps)
    o3 = orientation(q1, q2, p1, eps)
    o4 = orientation(q1, q2, p2, eps)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True

    def on_segment(a, b, c) -> bool:
        a, b, c = as_array(a), as_array(b), as_array(c)
        return bool(
            np.all(c >= np.minimum(a, b) - resolve_tolerance(eps)) and np.all(c <= np.maximum(a, b) + resolve_tolerance(eps))
        )

    return (
        (o1 == 0 and on_segment(p1, p2, q1))
        or (o2 == 0 and on_segment(p1, p2, q2))
        or (o3 == 0 and on_segment(q1, q2, p1))
        or (o4 == 0 and on_segment(q1, q2, p2))
    )


def signed_area(points: Sequence[PointLike]) -> float:
    """Shoelace signed area (positive for ccw)"""
    pts = np.array([as_array(p) for p in points])
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def diameter(points: Sequence[PointLike]) -> float:
    """Largest pairwise distance"""
    pts = np.array([as_array(p) for p in points])
    diffs = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diffs**2).sum(axis=-1)).max())


def convex_hull_2d(points: Sequence[PointLike], eps: Optional[float] = None) -> "ConvexPolygon":
    """Convex hull by Andrew's monotone chain

    Args:
        points: At least 3 planar points
        eps: Tolerance for dropping collinear boundary points

    Returns:
        Strictly convex ccw ConvexPolygon

    Raises:
        DegenerateInput: If fewer than 3 points or all points are collinear
    """
    pts = sorted(set(_coords(points)))
    if len(pts) < 3:
        raise DegenerateInput(f"Convex hull needs at least 3 distinct points, got {len(pts)}")

    lower: List[Coord] = []
    for p in pts:
        while len(lower) >= 2 and orientation(lower[-2], lower[-1], p, eps) <= 0:
            lower.pop()
        lower.append(p)

    upper: List[Coord] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orientation(upper[-2], upper[-1], p, eps) <= 0:
            upper.pop()
        upper.append(p)

    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("All points are collinear")
    return ConvexPolygon(tuple(hull))


# =============================================================================
# Chains and polygons
# =============================================================================


@dataclass(frozen=True)
class PolyChain:
    """Open directed polygonal chain"""

    vertices: Tuple[Coord, ...]

    def __post_init__(self):
        coords = _coords(self.vertices)
        if len(coords) < 2:
            raise DegenerateInput(f"Chain needs at least 2 vertices, got {len(coords)}")
        for i in range(len(coords) - 1):
            if coords[i] == coords[i + 1]:
                raise DegenerateSegment(f"Chain vertices {i} and {i + 1} coincide")
        object.__setattr__(self, "vertices", coords)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def segments(self) -> List[Tuple[np.ndarray, np.ndarray]]:
        pts = self.array
        return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]

    def segment_lengths(self) -> np.ndarray:
        return np.linalg.norm(np.diff(self.array, axis=0), axis=1)

    def length(self) -> float:
        return float(self.segment_lengths().sum())

    def turns(self) -> np.ndarray:
        """Signed turning angle at each internal vertex (ccw positive, in (-π, π])"""
        d = np.diff(self.array, axis=0)
        heading = np.arctan2(d[:, 1], d[:, 0])
        return (np.diff(heading) + np.pi) % (2 * np.pi) - np.pi

    def angles(self, side: str = "convex") -> List[float]:
        """angle_at for every internal vertex"""
        return [angle_at(self, i, side) for i in range(1, self.n - 1)]

    def suffix(self, i: int) -> "PolyChain":
        return PolyChain(self.vertices[i:])

    def reversed(self) -> "PolyChain":
        return PolyChain(self.vertices[::-1])

    def to_shapely(self) -> LineString:
        return LineString(self.vertices)


def angle_at(chain: PolyChain, i: int, side: str = "convex") -> float:
    """Angle of the chain at internal vertex i

    Args:
        chain: Directed chain
        i: Internal vertex index (0 < i < last)
        side: "left" (left of travel), "right", or "convex" (the smaller of the two)

    Returns:
        Angle in radians; "left"/"right" lie in [0, 2π), "convex" in [0, π]

    Raises:
        IndexOutOfRange: If i is not an internal vertex
        DegenerateSegment: If an adjacent segment has zero length
        InvalidParameter: For an unknown side

    Example:
        angle_at(PolyChain(((1, 0), (0, 0), (0, 1))), 1)  # π/2
    """
    if not 0 < i < chain.n - 1:
        raise IndexOutOfRange(f"Vertex {i} is not internal to a chain of {chain.n} vertices")
    pts = chain.array
    u = pts[i - 1] - pts[i]
    w = pts[i + 1] - pts[i]
    if np.linalg.norm(u) == 0.0 or np.linalg.norm(w) == 0.0:
        raise DegenerateSegment(f"Zero-length segment at vertex {i}")
    left = (math.atan2(u[1], u[0]) - math.atan2(w[1], w[0])) % (2 * math.pi)
    if side == "left":
        return left
    if side == "right":
        return (2 * math.pi - left) % (2 * math.pi)
    if side == "convex":
        return min(left, 2 * math.pi - left)
    raise InvalidParameter(f"Unknown angle side {side!r}")


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon with ccw vertex order"""

    vertices: Tuple[Coord, ...]

    def __post_init__(self):
        coords = _coords(self.vertices)
        n = len(coords)
        if n < 3:
            raise DegenerateInput(f"Polygon needs at least 3 vertices, got {n}")
        if len(set(coords)) != n:
            raise DegenerateInput("Polygon has repeated vertices")
        for i in range(n):
            if orientation(coords[i - 1], coords[i], coords[(i + 1) % n]) != 1:
                raise ConvexityViolation(
                    f"Vertex {i} is not a strict left turn (polygon must be strictly convex and ccw)"
                )
        object.__setattr__(self, "vertices", coords)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> np.ndarray:
        return np.array(self.vertices[i % self.n], dtype=float)

    def edge(self, i: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.vertex(i), self.vertex(i + 1)

    def edge_length(self, i: int) -> float:
        p, q = self.edge(i)
        return float(np.linalg.norm(q - p))

    def interior_angle(self, i: int) -> float:
        n = self.n
        chain = PolyChain((self.vertices[(i - 1) % n], self.vertices[i % n], self.vertices[(i + 1) % n]))
        return angle_at(chain, 1)

    def interior_angles(self) -> List[float]:
        return [self.interior_angle(i) for i in range(self.n)]

    def outward_normal(self, i: int) -> np.ndarray:
        p, q = self.edge(i)
        d = q - p
        return np.array([d[1], -d[0]]) / np.linalg.norm(d)

    def area(self) -> float:
        return signed_area(self.vertices)

    def diameter(self) -> float:
        return diameter(self.vertices)

    def centroid(self) -> np.ndarray:
        c = self.to_shapely().centroid
        return np.array([c.x, c.y])

    def to_shapely(self) -> Polygon:
        return Polygon(self.vertices)

    def transformed(self, scale: float = 1.0, angle: float = 0.0, offset: PointLike = (0.0, 0.0)) -> "ConvexPolygon":
        """Similarity copy: scale, rotate ccw by angle, then translate"""
        if not scale > 0:
            raise InvalidParameter(f"Scale must be positive, got {scale}")
        c, s = math.cos(angle), math.sin(angle)
        rot = np.array([[c, -s], [s, c]])
        pts = (self.array * scale) @ rot.T + as_array(offset)
        return ConvexPolygon(tuple(map(tuple, pts)))


def point_strictly_inside(poly: ConvexPolygon, p: PointLike, eps: Optional[float] = None) -> bool:
    """True iff p is interior to poly with clearance above eps from every edge"""
    p = as_array(p)
    e = resolve_tolerance(eps)
    for i in range(poly.n):
        a, b = poly.edge(i)
        d = b - a
        if cross2(d, p - a) / np.linalg.norm(d) <= e:
            return False
    return True


def triangle_min_altitude(t: Sequence[PointLike]) -> float:
    a, b, c = (as_array(p) for p in t)
    area2 = abs(cross2(b - a, c - a))
    longest = max(np.linalg.norm(b - a), np.linalg.norm(c - b), np.linalg.norm(a - c))
    return 0.0 if longest == 0.0 else area2 / longest


def polygons_overlap_area(p1: Sequence[PointLike], p2: Sequence[PointLike]) -> float:
    """Area of the intersection of two simple polygons"""
    poly1 = Polygon([tuple(as_array(p)) for p in p1])
    poly2 = Polygon([tuple(as_array(p)) for p in p2])
    return float(poly1.intersection(poly2).area)


def triangles_overlap(t1: Sequence[PointLike], t2: Sequence[PointLike], eps: Optional[float] = None) -> bool:
    """True iff the triangles share interior points

    Args:
        t1, t2: Three vertices each, any orientation
        eps: Tolerance (default: global ε)

    Returns:
        True when the intersection area exceeds (100·ε)²; shared edges or
        vertices alone never count

    Raises:
        DegenerateTriangle: If either triangle's smallest altitude is at most eps
    """
    for name, t in (("first", t1), ("second", t2)):
        if len(t) != 3:
            raise DegenerateTriangle(f"The {name} triangle has {len(t)} vertices")
        if triangle_min_altitude(t) <= resolve_tolerance(eps):
            raise DegenerateTriangle(f"The {name} triangle has near-zero area")
    return polygons_overlap_area(t1, t2) > overlap_area_threshold(eps)


# =============================================================================
# Rigid motions
# =============================================================================


@dataclass(frozen=True)
class RigidMotion2:
    """Planar isometry x -> R(angle) · F · x + t, with F the optional mirror (x, y) -> (x, -y)"""

    angle: float = 0.0
    tx: float = 0.0
    ty: float = 0.0
    reflect: bool = False

    @classmethod
    def identity(cls) -> "RigidMotion2":
        return cls()

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "RigidMotion2":
        reflect = bool(np.linalg.det(m[:2, :2]) < 0)
        angle = math.atan2(m[1, 0], m[0, 0])
        return cls(angle=angle, tx=float(m[0, 2]), ty=float(m[1, 2]), reflect=reflect)

    @classmethod
    def from_segment_pair(
        cls,
        src0: PointLike,
        src1: PointLike,
        dst0: PointLike,
        dst1: PointLike,
        reflect: bool = False,
    ) -> "RigidMotion2":
        """Motion taking src0 to dst0 and the direction src0->src1 onto dst0->dst1

        Raises:
            DegenerateSegment: If either segment has zero length
        """
        s0, s1, d0, d1 = (as_array(p) for p in (src0, src1, dst0, dst1))
        ds, dd = s1 - s0, d1 - d0
        if np.linalg.norm(ds) == 0.0 or np.linalg.norm(dd) == 0.0:
            raise DegenerateSegment("Cannot align a zero-length segment")
        if reflect:
            ds = np.array([ds[0], -ds[1]])
        angle = math.atan2(dd[1], dd[0]) - math.atan2(ds[1], ds[0])
        partial = cls(angle=angle, reflect=reflect)
        t = d0 - partial.apply(s0)
        return cls(angle=angle, tx=float(t[0]), ty=float(t[1]), reflect=reflect)

    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        m = np.array([[c, -s, self.tx], [s, c, self.ty], [0.0, 0.0, 1.0]])
        if self.reflect:
            m = m @ np.diag([1.0, -1.0, 1.0])
        return m

    def apply(self, p: PointLike) -> np.ndarray:
        return self.apply_many([p])[0]

    def apply_many(self, points: Sequence[PointLike]) -> np.ndarray:
        pts = np.array([as_array(p) for p in points], dtype=float).reshape(-1, 2)
        m = self.matrix()
        return pts @ m[:2, :2].T + m[:2, 2]

    def compose(self, other: "RigidMotion2") -> "RigidMotion2":
        """self ∘ other (apply other first)"""
        return RigidMotion2.from_matrix(self.matrix() @ other.matrix())

    def inverse(self) -> "RigidMotion2":
        return RigidMotion2.from_matrix(np.linalg.inv(self.matrix()))


def as_coords(points: np.ndarray) -> Tuple[Coord, ...]:
    """numpy (n, 2) array to a tuple of float pairs"""
    return tuple((float(x), float(y)) for x, y in np.asarray(points, dtype=float).reshape(-1, 2))
