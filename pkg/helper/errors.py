"""
Exception types for prismatoid-band-tools

Every geometric failure is a GeometryError carrying the exit code that
commands report for it. They subclass ValueError so callers that only
care about "bad input" can catch that.
"""

from __future__ import annotations

from .exit_codes import (
    CONVEXITY_VIOLATION,
    DEGENERATE_GEOMETRY,
    DOCUMENT_INVALID,
    DOMAIN_ERROR,
    HYPOTHESIS_VIOLATION,
    INVALID_CUT,
    INVALID_OPENING,
    INVALID_PARAMETER,
    NESTING_VIOLATION,
    PLACEMENT_FAILURE,
    PRECONDITION_VIOLATION,
    UNVERIFIED_WITNESS,
)


class GeometryError(ValueError):
    """Base class for all domain errors"""

    code: int = DOMAIN_ERROR

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class DomainError(GeometryError):
    """arccos argument outside [-1, 1] beyond the clamp tolerance"""

    code = DOMAIN_ERROR


class DegenerateInput(GeometryError):
    code = DEGENERATE_GEOMETRY


class DegenerateTriangle(GeometryError):
    code = DEGENERATE_GEOMETRY


class DegenerateVector(GeometryError):
    code = DEGENERATE_GEOMETRY


class DegenerateSegment(GeometryError):
    code = DEGENERATE_GEOMETRY


class DegenerateHeight(GeometryError):
    code = DEGENERATE_GEOMETRY


class IndexOutOfRange(GeometryError):
    code = PRECONDITION_VIOLATION


class NestingViolation(GeometryError):
    code = NESTING_VIOLATION


class ConvexityViolation(GeometryError):
    code = CONVEXITY_VIOLATION


class InvalidOpening(GeometryError):
    code = INVALID_OPENING


class HypothesisViolation(GeometryError):
    code = HYPOTHESIS_VIOLATION


class InvalidCutEdge(GeometryError):
    code = INVALID_CUT


class UnverifiedWitness(GeometryError):
    code = UNVERIFIED_WITNESS


class PlacementFailure(GeometryError):
    code = PLACEMENT_FAILURE


class InvalidParameter(GeometryError):
    code = INVALID_PARAMETER


class PreconditionViolation(GeometryError):
    code = PRECONDITION_VIOLATION


class DocumentError(GeometryError):
    """Input document parsed but does not describe a valid instance"""

    code = DOCUMENT_INVALID
