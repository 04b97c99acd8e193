"""Exception hierarchy shared by all modules."""


class BscombError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(BscombError):
    """An argument violates a documented precondition."""


class ResourceLimitError(BscombError):
    """An enumeration would exceed a configured bound."""


class ParseError(BscombError):
    """A textual input could not be parsed."""


class NotInSpanError(BscombError):
    """A fixed-point function is not in the span of the triangular basis.

    Carries the first failing subset and the non-divisible remainder.
    """

    def __init__(self, subset, remainder, message=None):
        self.subset = subset
        self.remainder = remainder
        super().__init__(message or f"not in span: division fails at {sorted(subset)}")


class VerificationError(BscombError):
    """A certificate or morphism failed re-verification."""


class PropertyViolationError(BscombError):
    """An exhaustive check falsified an expected structural property.

    This indicates a bug in the implementation, not in the mathematics.
    """
