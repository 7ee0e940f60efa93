"""Exception types shared across the package."""


class SmoothboundError(Exception):
    """Base class for all package-specific errors."""


class InvalidArgumentError(SmoothboundError, ValueError):
    """An argument violates a documented precondition."""


class TableTooSmallError(InvalidArgumentError):
    """A query exceeds the range covered by the prime table."""


class ResourceLimitError(SmoothboundError, RuntimeError):
    """An enumeration or allocation guard was exceeded.

    ``partial`` carries the partial result accumulated before the guard
    tripped (a lower estimate for counting operations), or None.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DegenerateWeightError(SmoothboundError, ValueError):
    """A weighted enumeration has an unbounded direction.

    ``index`` identifies the offending bin or variable (1-based for bins,
    0-based for auxiliary-sum variables).
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index
