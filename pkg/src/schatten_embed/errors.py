"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An input violates a documented precondition (shape, exponent range, ...)."""


class NumericalError(ArithmeticError):
    """A computation failed or produced an inconsistent result."""
