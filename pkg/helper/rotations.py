"""
Composition of planar rotations

A sequence of rotations about centres v_i by angles ω_i composes to a single
rotation about some point p (or to a translation when the angles sum to a
multiple of 2π). Composition is done exactly with homogeneous 3x3 matrices;
the hull-membership and weighted-centre relations of p to the v_i are
measured, not assumed.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np
from shapely.geometry import MultiPoint, Point

from .constants import ROTATION_TOLERANCE
from .errors import HypothesisViolation, PreconditionViolation
from .geometry import PointLike, as_array, resolve_tolerance
from .logging import log_debug


@dataclass(frozen=True)
class PlanarRotation:
    """Rotation by angle (ccw positive) about centre"""

    cx: float
    cy: float
    angle: float

    @property
    def centre(self) -> np.ndarray:
        return np.array([self.cx, self.cy])

    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        rot = np.array([[c, -s], [s, c]])
        t = self.centre - rot @ self.centre
        return np.array([[c, -s, t[0]], [s, c, t[1]], [0.0, 0.0, 1.0]])

    def apply(self, p: PointLike) -> np.ndarray:
        m = self.matrix()
        return m[:2, :2] @ as_array(p) + m[:2, 2]


@dataclass(frozen=True)
class Translation:
    tx: float
    ty: float

    def matrix(self) -> np.ndarray:
        return np.array([[1.0, 0.0, self.tx], [0.0, 1.0, self.ty], [0.0, 0.0, 1.0]])

    def apply(self, p: PointLike) -> np.ndarray:
        return as_array(p) + np.array([self.tx, self.ty])


Isometry = Union[PlanarRotation, Translation]


def composed_matrix(rotations: Sequence[PlanarRotation]) -> np.ndarray:
    """R_n ··· R_1: the first rotation in the list is applied first"""
    m = np.eye(3)
    for r in rotations:
        m = r.matrix() @ m
    return m


def compose(rotations: Sequence[PlanarRotation], tol: float = ROTATION_TOLERANCE) -> Isometry:
    """Single isometry equivalent to applying the rotations in order

    Args:
        rotations: Non-empty list, applied left to right
        tol: Angles within tol of a multiple of 2π give a translation

    Returns:
        PlanarRotation about the unique fixed point with angle Σω_i, or a
        Translation

    Raises:
        PreconditionViolation: If the list is empty
    """
    if not rotations:
        raise PreconditionViolation("Cannot compose an empty list of rotations")
    m = composed_matrix(rotations)
    total = float(sum(r.angle for r in rotations))
    residue = math.remainder(total, 2 * math.pi)
    if abs(residue) <= tol:
        return Translation(float(m[0, 2]), float(m[1, 2]))
    p = np.linalg.solve(np.eye(2) - m[:2, :2], m[:2, 2])
    return PlanarRotation(float(p[0]), float(p[1]), total)


def apply_sequentially(rotations: Sequence[PlanarRotation], p: PointLike) -> np.ndarray:
    q = as_array(p)
    for r in rotations:
        q = r.apply(q)
    return q


def weighted_center(rotations: Sequence[PlanarRotation]) -> np.ndarray:
    """(Σ ω_i v_i) / (Σ ω_i)"""
    weights = np.array([r.angle for r in rotations])
    centres = np.array([r.centre for r in rotations])
    return (weights[:, None] * centres).sum(axis=0) / weights.sum()


def hull_distance(rotations: Sequence[PlanarRotation], p: PointLike) -> float:
    """Distance from p to the convex hull of the rotation centres (0 inside)"""
    hull = MultiPoint([tuple(r.centre) for r in rotations]).convex_hull
    return float(hull.distance(Point(*as_array(p))))


def _check_hypothesis(rotations: Sequence[PlanarRotation]) -> None:
    if not rotations:
        raise HypothesisViolation("At least one rotation is required")
    if any(r.angle < 0 for r in rotations):
        raise HypothesisViolation("Rotation angles must be non-negative")
    total = sum(r.angle for r in rotations)
    if not 0 < total <= math.pi:
        raise HypothesisViolation(f"Total angle must lie in (0, π], got {total}")


def hull_membership_check(rotations: Sequence[PlanarRotation], eps: Optional[float] = None) -> bool:
    """True iff the composed centre lies in the convex hull of the centres

    Raises:
        HypothesisViolation: Unless all ω_i >= 0 and 0 < Σω_i <= π

    Notes:
        Exact composition does not always land inside the hull: for two
        rotations the centre is the apex of the isosceles construction over
        v_1 v_2 with base angles ω_1/2 and ω_2/2, which lies off the segment.
        The distance to the weighted centre is logged for comparison.
    """
    _check_hypothesis(rotations)
    result = compose(rotations)
    p = result.centre if isinstance(result, PlanarRotation) else None
    if p is None:
        return False
    gap = float(np.linalg.norm(p - weighted_center(rotations)))
    log_debug(f"Composed centre {tuple(p)}: hull distance {hull_distance(rotations, p):.3e}, weighted-centre gap {gap:.3e}")
    return hull_distance(rotations, p) <= resolve_tolerance(eps)


def two_rotation_apex(r1: PlanarRotation, r2: PlanarRotation) -> np.ndarray:
    """Fixed point of r2 ∘ r1 by the classical isosceles construction

    The composed centre sees v_1 and v_2 under base angles ω_1/2 at v_1 and
    ω_2/2 at v_2, on the side to the right of v_1 -> v_2.
    """
    v1, v2 = r1.centre, r2.centre
    d = v2 - v1
    base = float(np.linalg.norm(d))
    a1, a2 = r1.angle / 2, r2.angle / 2
    # law of sines: |v1 p| = base · sin(a2) / sin(a1 + a2)
    dist = base * math.sin(a2) / math.sin(a1 + a2)
    u = d / base
    c, s = math.cos(-a1), math.sin(-a1)
    direction = np.array([c * u[0] - s * u[1], s * u[0] + c * u[1]])
    return v1 + dist * direction


def thales_gap(r1: PlanarRotation, r2: PlanarRotation) -> float:
    """How far the two-rotation centre lies outside the disk on diameter v_1 v_2 (<= 0 inside)"""
    result = compose([r1, r2])
    if not isinstance(result, PlanarRotation):
        return math.inf
    mid = (r1.centre + r2.centre) / 2
    radius = float(np.linalg.norm(r2.centre - r1.centre)) / 2
    return float(np.linalg.norm(result.centre - mid)) - radius
