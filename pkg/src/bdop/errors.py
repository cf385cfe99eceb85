"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function."""


class QuadratureError(RuntimeError):
    """Quadrature failed to reach the requested tolerance.

    ``estimate`` holds the best value obtained and ``error`` the achieved
    error estimate.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class DegenerateWeightError(ValueError):
    """A weighted Beta projection has a vanishing (or underflowing) denominator."""


class HypothesisViolation(ValueError):
    """The weight vanishes on both sides of the evaluation point."""


class ConfigError(ValueError):
    """Malformed experiment configuration."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
