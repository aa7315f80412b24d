"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument or model parameter lies outside its admissible domain."""


class OrderingError(ValueError):
    """A frequency/temperature ordering chain required by a cycle is violated."""


class SingularityError(ArithmeticError):
    """An integrand denominator vanishes on the integration domain."""


class ConvergenceError(RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget.

    Carries the partial result so callers can still inspect it.
    """

    def __init__(self, message: str, partial: float, error_estimate: float):
        super().__init__(message)
        self.partial = partial
        self.error_estimate = error_estimate


class ConfigError(ValueError):
    """A run-configuration file cannot be parsed or fails key validation."""
