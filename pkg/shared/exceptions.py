"""Error hierarchy shared by the library, the CLI and the API.

Each error carries the process exit code the CLI reports for it.
"""
from typing import Any, Optional


class NumspecError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InputError(NumspecError):
    """Raised when an argument is invalid.

    Covers malformed matrices, invalid norms, unknown examples and parameter
    ranges that the operations do not accept.
    """

    exit_code = 2


class MatrixFileError(InputError):
    """Raised when a matrix file cannot be parsed."""

    def __init__(self, msg: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            msg = f"{msg} (line {line}, column {column})"
        super().__init__(msg)
        self.line = line
        self.column = column


class NumericalError(NumspecError):
    """Raised when a computation cannot deliver a trustworthy result."""

    exit_code = 4

    def __init__(self, msg: str, best: Any = None):
        super().__init__(msg)
        self.best = best


class ConvergenceError(NumericalError):
    """Raised when an iterative method did not converge.

    ``best`` holds the best value (a valid lower bound) found before giving up.
    """


class SingularityError(NumericalError):
    """Raised when lambda lies (numerically) in the spectrum."""


class GeometryError(NumericalError):
    """Raised when support data describe an empty or inconsistent region."""


class SweepError(NumericalError):
    """Raised when the support estimator fails at one angle of a sweep."""

    def __init__(self, angle_index: int, theta: float, cause: NumericalError):
        super().__init__(f"angle {angle_index} (theta={theta:.6g}): {cause}", best=cause.best)
        self.angle_index = angle_index
        self.theta = theta


class EquivalenceError(NumericalError):
    """Raised when the semigroup envelope and the pairing bound disagree."""
