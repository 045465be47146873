"""Exception types shared across the package."""


class CasimirError(Exception):
    """Base class for all package errors."""


class ValidationError(CasimirError):
    """An input value is out of range; carries the offending field name."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class ModelMismatchError(CasimirError):
    """A response evaluator was called with the wrong model kind."""


class DomainError(CasimirError):
    """Input is outside the validity domain of a formula."""


class ZeroFrequencyError(CasimirError):
    """The n = 0 Matsubara term requires the analytic limit, not xi = 0."""


class ConvergenceError(CasimirError):
    """Matsubara summation did not converge within the configured cutoff.

    Carries the partial sums and the tail estimate so callers can report
    diagnostics.
    """

    def __init__(self, message, partial_energy=None, partial_pressure=None,
                 tail_estimate=None, n_terms=None):
        super().__init__(message)
        self.partial_energy = partial_energy
        self.partial_pressure = partial_pressure
        self.tail_estimate = tail_estimate
        self.n_terms = n_terms


class RPAPoleError(CasimirError):
    """The screening denominator vanished for some mode."""


class DegenerateDistributionError(CasimirError):
    """Zero-width distribution requested; the density is a point mass."""


class FitError(CasimirError):
    """A scaling-law fit is ill conditioned; carries diagnostics."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class ConfigError(CasimirError):
    """Configuration text failed to parse or validate.

    line/column are 1-based positions when the error is tied to a
    specific location in the input.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, col {column or 1}: {message}"
        super().__init__(message)
