"""Exception hierarchy shared by every module."""


class KpackError(Exception):
    """Base class for all package errors."""


class InvalidGeometry(KpackError, ValueError):
    """A polygon or region violates its structural invariants."""


class GeneralPositionViolation(KpackError):
    """Member boundaries are not in general position.

    ``members`` holds the ids involved and ``locus`` an exact point near the
    offending contact (or ``None`` when no single point applies).
    """

    def __init__(self, message, members=(), locus=None):
        super().__init__(message)
        self.members = tuple(members)
        self.locus = locus


class DegenerateContact(GeneralPositionViolation):
    """Two boundaries touch tangentially, share a vertex or overlap."""


class TripleIntersection(KpackError):
    """Three members share a point where the operation requires depth <= 2."""


class ResolutionTooCoarse(KpackError):
    """Raster resolution cannot resolve the smallest arrangement feature."""

    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


class BudgetExceeded(KpackError):
    """A pruned exhaustive search ran out of its node budget."""


class EmptyGraph(KpackError, ValueError):
    pass


class EmptyHypergraph(KpackError, ValueError):
    pass


class GenerationFailed(KpackError):
    """A generator exhausted its resampling budget."""


class FormatError(KpackError, ValueError):
    """A family or manifest file could not be parsed."""
