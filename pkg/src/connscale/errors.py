"""Exception types shared across the package."""


class ConnScaleError(Exception):
    """Base class for all package errors."""


class DomainError(ConnScaleError, ValueError):
    """Invalid domain, dimension, solid angle, or point placement."""


class ParameterError(ConnScaleError, ValueError):
    """A channel, scheme or design parameter violates its constraint."""


class ConfigError(ConnScaleError):
    """Malformed run configuration or mismatched component configuration."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NumericalError(ConnScaleError, ArithmeticError):
    """Quadrature or sampling failed to converge; carries the partial value."""

    def __init__(self, message, partial_value=None, error_estimate=None):
        super().__init__(message)
        self.partial_value = partial_value
        self.error_estimate = error_estimate
