"""Exception types shared by all divrel modules."""


class DomainError(ValueError):
    """An argument violates an operation's precondition."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size cap."""
