"""Exception hierarchy shared by all geometry modules."""
from __future__ import annotations

from typing import Any


class GeometryError(Exception):
    """Base class for every error raised by convex_cocompact."""


class PreconditionError(GeometryError):
    """An operation was called outside of its domain of definition."""


class InvalidMapError(PreconditionError):
    """Matrix is singular, non-finite or has the wrong shape."""


class ChartError(PreconditionError):
    """A point is not representable in the affine chart of a body."""


class DegenerateLineError(PreconditionError):
    """Two points that should span a line coincide."""


class DegeneracyError(PreconditionError):
    """Input points or subspaces are linearly dependent."""


class AmbiguousClassificationError(PreconditionError):
    """An eigenvalue gap falls inside the numerical tolerance band."""


class KernelProximityError(PreconditionError):
    """A point is too close to the kernel of an endomorphism."""


class NotAutomorphismError(PreconditionError):
    """A map fails the sampled invariance check for a domain."""


class FlowRangeError(GeometryError):
    """The geodesic flow pushed the base point into the numerical boundary collar."""

    def __init__(self, message: str, achieved_t: float) -> None:
        super().__init__(message)
        self.achieved_t = achieved_t


class BudgetError(GeometryError):
    """A search or enumeration ran out of its budget."""

    def __init__(self, message: str, partial: Any = None) -> None:
        super().__init__(message)
        self.partial = partial


class Diagnostic(GeometryError):
    """Outcome that is not a bug but signals missing structure or a too shallow sample."""


class NoChartDiagnostic(Diagnostic):
    pass


class TheoremViolation(Diagnostic):
    pass


class InstabilityDiagnostic(Diagnostic):
    pass
