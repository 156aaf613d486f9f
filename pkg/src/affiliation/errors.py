"""Exception types shared across the package."""


class InputError(ValueError):
    """User-supplied data violates a documented precondition."""


class ContractViolation(RuntimeError):
    """An internal invariant was broken; indicates a bug, not bad input."""
