"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SeriesTruncationError(ArithmeticError):
    """A series hit its term cap before reaching the requested tolerance.

    The partial sum and the last term are kept so callers can decide whether
    the estimate is still usable.
    """

    def __init__(self, message, partial_sum=None, last_term=None):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.last_term = last_term


class IntegrationError(ArithmeticError):
    """Adaptive quadrature failed to converge or produced a non-finite value."""

    def __init__(self, message, best_estimate=None, abs_error=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.abs_error = abs_error


class OrbitError(ValueError):
    """No closed classical orbit exists for the requested parameters."""
