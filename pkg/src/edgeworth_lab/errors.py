"""Exception hierarchy shared across the package."""


class UsageError(ValueError):
    """A caller violated an operation's precondition (bad argument, mismatch)."""


class DomainError(ValueError):
    """A numeric argument lies outside the mathematical domain."""


class IncompleteTableError(UsageError):
    """A moment or cumulant lookup needed an entry the table does not hold."""


class DegenerateStatisticError(ValueError):
    """The leading variance coefficient is non-positive; no standardization exists."""


class NumericError(RuntimeError):
    """A numeric procedure failed to converge or produced non-finite values."""

    def __init__(self, message, terms=None):
        super().__init__(message)
        self.terms = terms
