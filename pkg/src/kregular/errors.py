"""Exception hierarchy shared by every kregular module."""


class KRegularError(Exception):
    """Base class for all library errors."""


class CapabilityError(KRegularError):
    """A request exceeds a documented capacity (cache bound, size guard)."""


class DomainError(KRegularError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PreconditionError(KRegularError, ValueError):
    """A point or parameter set violates the hypothesis of a bound."""


class AccuracyError(KRegularError):
    """The requested accuracy cannot be achieved with the given truncation."""

    def __init__(self, message, required_terms=None):
        super().__init__(message)
        self.required_terms = required_terms


class DependencyError(KRegularError):
    """A required table or intermediate result is missing."""


class InconclusiveError(KRegularError):
    """A scan ran out of budget before the inequality stabilised."""


class IntegrityError(KRegularError):
    """A persisted file failed validation. ``header`` holds what could be parsed."""

    def __init__(self, message, header=None):
        super().__init__(message)
        self.header = dict(header or {})
