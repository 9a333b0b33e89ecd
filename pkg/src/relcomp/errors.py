"""Exception types shared across the package."""


class RelcompError(Exception):
    """Base class for all library errors."""


class DegreeError(RelcompError):
    """Raised for degree-0/degree-1 groups and mismatched degrees."""


class BudgetExceeded(RelcompError):
    """A computation would exceed its configured memory or work budget."""

    def __init__(self, message, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class PreconditionError(RelcompError):
    """An operation was called outside its documented domain."""


class DescriptorError(RelcompError):
    """A group descriptor could not be parsed or built."""
