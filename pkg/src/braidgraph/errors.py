"""Exception hierarchy shared by all modules."""


class BraidGraphError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(BraidGraphError, ValueError):
    """Malformed user input: bad group spec, letter out of range, bad element string."""


class DomainError(BraidGraphError, ValueError):
    """Well-formed input outside an operation's domain (non-reduced word, mismatched products)."""


class UnsupportedModeError(BraidGraphError):
    """A computation mode that does not apply to the given input."""


class BudgetExceededError(BraidGraphError):
    """Enumeration would exceed the configured vertex budget."""

    def __init__(self, message: str, *, required: int, budget: int):
        super().__init__(message)
        self.required = required
        self.budget = budget


class NotExhaustiveError(BraidGraphError):
    """An exact answer was requested but only bounds could be certified."""

    def __init__(self, message: str, *, lower: int, upper: int):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class InvariantError(BraidGraphError, AssertionError):
    """A proven property failed on computed data; always indicates a bug."""
