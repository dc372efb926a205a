"""Exception types shared across the package."""


class LpInterpError(Exception):
    """Base class for all package errors."""


class ConfigurationError(LpInterpError):
    """Invalid parameters, noise-model mismatch, or malformed config input."""


class DegenerateDesignError(LpInterpError):
    """Design matrix is rank deficient below the pivot threshold."""


class SeparabilityError(LpInterpError):
    """Margin problem has no strictly separating solution."""


class UnboundedDirectionError(LpInterpError):
    """One-dimensional landscape minimum is not attained (runaway direction)."""


class AssumptionViolationError(LpInterpError):
    """Population landscape minimizer escaped to the search boundary."""


class SchemaError(LpInterpError):
    """CSV input does not match the documented schema."""
