class NeighborlyError(Exception):
    """Base class for every error raised by the library."""


class ValidationError(NeighborlyError, ValueError):
    """Malformed partition, component, series parameter or configuration value."""


class NotAdmissibleError(ValidationError):
    """A sign was requested for a partition whose signature multiset has a multiple of 3."""


class StructureError(NeighborlyError, ValueError):
    """A pruned component is not one of the six expected shapes."""


class BudgetExceededError(NeighborlyError, RuntimeError):
    """An enumeration or brute-force cap was hit."""


class DivisibilityError(NeighborlyError, ArithmeticError):
    """Exact division of a truncated series did not reproduce the numerator."""


class SeriesError(NeighborlyError, IndexError):
    """Coefficient requested outside the known range of a truncated series."""
