"""Exception types shared across the package."""


class UsageError(ValueError):
    """An input violates a documented precondition of an operation."""


class RegimeError(UsageError):
    """Parameters lie outside the regime where a formula or method is valid."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured size cap (pass force=True to override)."""
