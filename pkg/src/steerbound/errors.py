"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a documented precondition (range, shape, norm)."""


class CapacityError(ValueError):
    """Problem size exceeds the enumeration guard of an operation."""


class CanonicalizationError(ArithmeticError):
    """Gauge fixing is undefined because the resultant vector vanishes."""
