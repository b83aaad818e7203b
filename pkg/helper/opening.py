"""
Opening of a convex vertex by lifting its neighbours

A hinge b with planar neighbours a and c spans the convex angle θ. Lifting the
points v_1..v_k that fan out from b (all projecting to the convex side) to a
common height z replaces θ by the 3D fan sum φ(z). This module computes φ by
formula and by geometry, checks θ < φ ≤ π, the reflection identity, and
monotonicity in z, and produces per-vertex opening reports for a band.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .band import Band, NestedPrismatoid
from .constants import ARCCOS_CLAMP, FINITE_DIFFERENCE_STEP, MONOTONIC_SLACK
from .errors import (
    ConvexityViolation,
    DegenerateVector,
    DomainError,
    InvalidParameter,
    PreconditionViolation,
)
from .geometry import PointLike, as_array, cross2, get_tolerance, orientation
from .logging import log_debug, log_warning


def safe_arccos(value: float, clamp: float = ARCCOS_CLAMP) -> float:
    """arccos that forgives rounding just outside [-1, 1]

    Raises:
        DomainError: If value lies more than clamp outside [-1, 1]
    """
    if value > 1.0 + clamp or value < -1.0 - clamp:
        raise DomainError(f"arccos argument {value!r} outside [-1, 1]")
    return math.acos(min(1.0, max(-1.0, value)))


# =============================================================================
# Closed form
# =============================================================================


def _closed_form_terms(theta: float, x: float, y: float, z: float) -> Tuple[float, float, float]:
    if not 0.0 < theta < math.pi:
        raise InvalidParameter(f"theta must lie in (0, π), got {theta}")
    r = math.sqrt(x * x + y * y + z * z)
    if r == 0.0:
        raise DegenerateVector("v coincides with the hinge b")
    return -x, -x * math.cos(theta) + y * math.sin(theta), r


def phi_closed_form(theta: float, x: float, y: float, z: float) -> float:
    """φ(z) for a = (-1, 0), b = origin, c = (cos(π-θ), sin(π-θ)), v = (x, y, z)

    Raises:
        InvalidParameter: If theta is outside (0, π)
        DegenerateVector: If v is at the origin
        DomainError: If an arccos argument leaves [-1, 1] beyond the clamp
    """
    u1, u2, r = _closed_form_terms(theta, x, y, z)
    return safe_arccos(u1 / r) + safe_arccos(u2 / r)


def phi_derivative_printed(theta: float, x: float, y: float, z: float) -> float:
    """dφ/dz in its commonly printed form, which omits the positive factor 1/r³

    Only its sign is meaningful; compare with phi_derivative_numeric.
    """
    u1, u2, r = _closed_form_terms(theta, x, y, z)
    r2 = r * r
    d1 = math.sqrt(max(0.0, 1.0 - u1 * u1 / r2))
    d2 = math.sqrt(max(0.0, 1.0 - u2 * u2 / r2))
    if d1 == 0.0 or d2 == 0.0:
        return math.inf if z > 0 else 0.0
    return z * (u1 / d1 + u2 / d2)


def phi_derivative_exact(theta: float, x: float, y: float, z: float) -> float:
    """Analytic dφ/dz"""
    _, _, r = _closed_form_terms(theta, x, y, z)
    printed = phi_derivative_printed(theta, x, y, z)
    return printed / r**3


def phi_derivative_numeric(
    theta: float, x: float, y: float, z: float, h: float = FINITE_DIFFERENCE_STEP
) -> float:
    """Central-difference dφ/dz (φ is even in z, so z = 0 gives 0)"""
    return (phi_closed_form(theta, x, y, z + h) - phi_closed_form(theta, x, y, z - h)) / (2 * h)


# =============================================================================
# Geometric configurations
# =============================================================================


def _angle_between(u: np.ndarray, w: np.ndarray) -> float:
    nu, nw = np.linalg.norm(u), np.linalg.norm(w)
    if nu <= get_tolerance() or nw <= get_tolerance():
        raise DegenerateVector("Zero-length difference vector at the hinge")
    return math.atan2(float(np.linalg.norm(np.cross(u, w))), float(np.dot(u, w)))


def _lift(p: PointLike) -> np.ndarray:
    a = as_array(p)
    return np.array([a[0], a[1], 0.0]) if a.shape == (2,) else a


@dataclass(frozen=True)
class VertexOpeningConfig:
    """Hinge b with planar neighbours a, c and lifted fan points v_1..v_k

    All v_i share one height z ≥ 0 and project into the convex angle at b in
    angular order from a to c. For k ≥ 2 the projected chain a, v_1, ..., v_k, c
    must turn consistently (no zigzag).
    """

    a: Tuple[float, float]
    b: Tuple[float, float]
    c: Tuple[float, float]
    vs: Tuple[Tuple[float, float, float], ...]
    check_convexity: bool = field(default=True, compare=False)

    def __post_init__(self):
        a, b, c = (tuple(float(t) for t in as_array(p)[:2]) for p in (self.a, self.b, self.c))
        vs = tuple(tuple(float(t) for t in as_array(v)) for v in self.vs)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "vs", vs)
        if not vs:
            raise PreconditionViolation("At least one lifted point is required")
        if any(len(v) != 3 for v in vs):
            raise PreconditionViolation("Lifted points must be 3D")
        heights = {v[2] for v in vs}
        if len(heights) != 1:
            raise PreconditionViolation("Lifted points must share one height")
        if self.z < 0:
            raise PreconditionViolation(f"Height must be non-negative, got {self.z}")
        if not 0.0 < self.theta <= math.pi + get_tolerance():
            raise ConvexityViolation(f"Angle at b must lie in (0, π], got {self.theta}")
        if self.check_convexity:
            self._check_convex_side()

    @property
    def z(self) -> float:
        return self.vs[0][2]

    @property
    def k(self) -> int:
        return len(self.vs)

    @property
    def theta(self) -> float:
        u = np.subtract(self.a, self.b)
        w = np.subtract(self.c, self.b)
        return math.atan2(abs(cross2(u, w)), float(np.dot(u, w)))

    def projections(self) -> List[Tuple[float, float]]:
        return [(v[0], v[1]) for v in self.vs]

    def _check_convex_side(self) -> None:
        eps = get_tolerance()
        a, b, c = np.array(self.a), np.array(self.b), np.array(self.c)
        projections = [np.array(p) for p in self.projections()]
        if any(np.linalg.norm(p - b) <= eps for p in projections):
            if self.k == 1:
                return
            raise ConvexityViolation("Only a single lifted point may project onto b")

        side = orientation(a, b, c)
        if side == 0:
            # straight angle at b: either half-plane is convex, v_1 picks one
            side = orientation(a, b, projections[0])
        if side == 0:
            raise ConvexityViolation("v_1 projects onto the line through a and b")

        # angular order from a toward c, inside the convex angle
        ref = (a - b) / np.linalg.norm(a - b)
        theta = self.theta

        def sweep(p: np.ndarray) -> float:
            d = p - b
            ang = math.atan2(-side * cross2(ref, d), float(np.dot(ref, d)))
            return ang % (2 * math.pi)

        sweeps = [sweep(p) for p in projections]
        if any(s > theta + eps for s in sweeps):
            raise ConvexityViolation("A lifted point does not project to the convex side of b")
        if any(s2 < s1 - eps for s1, s2 in zip(sweeps, sweeps[1:])):
            raise ConvexityViolation("Lifted points are not in angular order from a to c")

        if self.k >= 2:
            chain = [a] + projections + [c]
            turns = {orientation(p, q, r) for p, q, r in zip(chain, chain[1:], chain[2:])}
            if len(turns - {0}) > 1:
                raise ConvexityViolation("Projected chain a, v_1, ..., v_k, c zigzags")

    def fan_vectors(self) -> List[np.ndarray]:
        """3D vectors from b to a, v_1, ..., v_k, c"""
        b3 = _lift(self.b)
        pts = [_lift(self.a)] + [np.array(v) for v in self.vs] + [_lift(self.c)]
        return [p - b3 for p in pts]


def phi_from_geometry(cfg: VertexOpeningConfig) -> float:
    """Sum of consecutive 3D angles at b along the fan a, v_1, ..., v_k, c

    Raises:
        DegenerateVector: If any difference vector has near-zero norm
    """
    vecs = cfg.fan_vectors()
    return sum(_angle_between(u, w) for u, w in zip(vecs, vecs[1:]))


def gaussian_arcs(cfg: VertexOpeningConfig) -> List[float]:
    """Great-circle arc lengths between consecutive fan directions on the unit sphere"""
    units = []
    for v in cfg.fan_vectors():
        n = np.linalg.norm(v)
        if n <= get_tolerance():
            raise DegenerateVector("Zero-length difference vector at the hinge")
        units.append(v / n)
    return [safe_arccos(float(np.dot(u, w))) for u, w in zip(units, units[1:])]


def spherical_path_length(cfg: VertexOpeningConfig) -> float:
    return float(sum(gaussian_arcs(cfg)))


def check_opening(cfg: VertexOpeningConfig, tol: Optional[float] = None) -> bool:
    """True iff lifting strictly opens θ without passing π

    Args:
        cfg: Validated configuration (construction already enforced the
            convex-side precondition)
        tol: Slack for the π bound and the sphere path comparison

    Returns:
        False at z = 0 (φ = θ is not a strict opening); otherwise
        θ < φ ≤ π and the Gaussian-sphere path from a through the v_i to c
        is at least the geodesic θ
    """
    tol = get_tolerance() if tol is None else tol
    if cfg.z == 0.0:
        return False
    theta = cfg.theta
    phi = phi_from_geometry(cfg)
    path = spherical_path_length(cfg)
    return theta < phi <= math.pi + tol and path >= theta - tol


def reflect_config(cfg: VertexOpeningConfig) -> VertexOpeningConfig:
    """Config with v_1 mirrored through b at the same height (reflex side)"""
    bx, by = cfg.b
    x, y, z = cfg.vs[0]
    mirrored = (2 * bx - x, 2 * by - y, z)
    return VertexOpeningConfig(cfg.a, cfg.b, cfg.c, (mirrored,), check_convexity=False)


def reflection_identity(cfg: VertexOpeningConfig) -> Tuple[float, float]:
    """Fan sums through v_1 and through its mirror image v_1'

    Returns:
        (φ, φ') with φ + φ' = 2π; for k > 1 only v_1 is reflected and φ is
        the a, v_1, c fan

    Raises:
        DegenerateVector: If a fan vector degenerates
    """
    single = VertexOpeningConfig(cfg.a, cfg.b, cfg.c, cfg.vs[:1], check_convexity=False)
    return phi_from_geometry(single), phi_from_geometry(reflect_config(single))


def check_monotonic(
    theta: float,
    x: float,
    y: float,
    z_samples: Sequence[float],
    slack: float = MONOTONIC_SLACK,
) -> bool:
    """True iff φ(z) is nondecreasing across the samples

    Args:
        theta, x, y: Closed-form parameters
        z_samples: Non-negative, strictly increasing heights
        slack: Allowed decrease between consecutive samples and allowed
            negative finite-difference slope

    Raises:
        PreconditionViolation: If the samples are negative or not strictly increasing
    """
    zs = [float(z) for z in z_samples]
    if any(z < 0 for z in zs):
        raise PreconditionViolation("z samples must be non-negative")
    if any(z2 <= z1 for z1, z2 in zip(zs, zs[1:])):
        raise PreconditionViolation("z samples must be strictly increasing")

    phis = [phi_closed_form(theta, x, y, z) for z in zs]
    if any(p2 < p1 - slack for p1, p2 in zip(phis, phis[1:])):
        return False

    for z in zs:
        numeric = phi_derivative_numeric(theta, x, y, z)
        if numeric < -slack:
            return False
        printed = phi_derivative_printed(theta, x, y, z)
        if abs(numeric) > slack and math.copysign(1, printed) != math.copysign(1, numeric):
            log_warning(
                f"Printed dφ/dz sign disagrees with finite differences at "
                f"(θ={theta:.6f}, x={x:.6f}, y={y:.6f}, z={z:.6f})"
            )
    return True


# =============================================================================
# Band-level report
# =============================================================================


@dataclass(frozen=True)
class VertexOpening:
    index: int
    theta: float
    phi: float

    @property
    def omega(self) -> float:
        return self.phi - self.theta


@dataclass(frozen=True)
class OpeningReport:
    side: str
    z: float
    records: Tuple[VertexOpening, ...]

    @property
    def omegas(self) -> List[float]:
        return [r.omega for r in self.records]

    @property
    def max_phi(self) -> float:
        return max(r.phi for r in self.records)

    @property
    def min_omega(self) -> float:
        return min(self.omegas)

    def by_index(self, index: int) -> VertexOpening:
        for r in self.records:
            if r.index == index:
                return r
        raise KeyError(index)


def _fan_sum(p: NestedPrismatoid, hinge: Tuple[str, int], around: Sequence[Tuple[str, int]]) -> float:
    h = p.point3(hinge)
    vecs = [p.point3(lbl) - h for lbl in around]
    return sum(_angle_between(u, w) for u, w in zip(vecs, vecs[1:]))


def open_band_report(p: NestedPrismatoid, band: Band, side: str = "B") -> OpeningReport:
    """Per-vertex opening of L_B or L_A at the prismatoid's height

    Args:
        p: Prismatoid whose height is used
        band: Its band (combinatorics are height-independent)
        side: "B" or "A"

    Returns:
        OpeningReport; on the B side θ_i is B's interior angle and φ_i the
        fan sum at b_i; on the A side θ_j is A's interior angle and φ_j is
        2π minus the band angle at a_j, the reflected opening

    Raises:
        InvalidParameter: For an unknown side
    """
    records = []
    if side == "B":
        nB = p.B.n
        for i in range(nB):
            around = [("B", i - 1)] + [("A", j) for j in band.fan_at_b(i)] + [("B", (i + 1) % nB)]
            records.append(VertexOpening(i, p.B.interior_angle(i), _fan_sum(p, ("B", i), around)))
    elif side == "A":
        nA = p.A.n
        for j in range(nA):
            around = [("A", j - 1)] + [("B", i) for i in band.fan_at_a(j)] + [("A", (j + 1) % nA)]
            psi = _fan_sum(p, ("A", j), around)
            records.append(VertexOpening(j, p.A.interior_angle(j), 2 * math.pi - psi))
    else:
        raise InvalidParameter(f"Unknown band side {side!r} (expected 'B' or 'A')")

    report = OpeningReport(side, p.z, tuple(records))
    log_debug(f"{side}-side opening at z={p.z}: min ω={report.min_omega:.3e}, max φ={report.max_phi:.6f}")
    return report
