"""Exception hierarchy shared across the package.

Three top-level families map onto the CLI exit codes: configuration
problems (exit 2), data problems (exit 3), and numerical failures (exit 4).
"""


class TrendIndexError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(TrendIndexError):
    """Invalid configuration value, flag, or config file."""


class DataError(TrendIndexError):
    """Malformed, inconsistent, or unusable input data."""


class FrequencyError(DataError):
    """Series frequency does not match what the operation requires."""


class AlignmentError(DataError):
    """Series cannot be aligned onto a common monthly range."""


class NumericalError(TrendIndexError):
    """Numerical failure during estimation or testing."""


class RankDeficiencyError(NumericalError):
    """Design matrix is rank deficient (or conditioned beyond the guard).

    ``column`` holds the index of the offending column; callers that know
    the column labels re-raise with the label filled in.
    """

    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column


class ConvergenceError(NumericalError):
    """An iterative numerical routine failed to converge."""

    def __init__(self, message: str, iterations: int | None = None):
        super().__init__(message)
        self.iterations = iterations
