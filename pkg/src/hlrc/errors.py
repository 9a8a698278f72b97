"""Shared exception types."""


class ParameterError(ValueError):
    """Raised when construction parameters violate a stated precondition."""


class InvariantError(AssertionError):
    """Raised when a build-time self-check fails (signals an internal bug)."""
