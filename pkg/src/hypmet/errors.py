"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called with arguments violating its contract."""


class OutsideDomainError(PreconditionError):
    """A point that must lie inside the domain does not."""
