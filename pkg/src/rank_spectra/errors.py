"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: parameter/config problems exit 2,
degenerate-input problems exit 3, numeric failures exit 4.
"""


class RankSpectraError(Exception):
    """Base class for all package errors."""


class ParameterError(RankSpectraError, ValueError):
    """Invalid distribution/config/law parameters."""


class DomainError(RankSpectraError, ValueError):
    """Argument outside the mathematical domain (u outside (0,1), Im z <= 0, ...)."""


class UnsupportedCombinationError(ParameterError):
    """Requested a matrix-kind/scaling/pattern combination with no reference law."""


class DegenerateRowError(RankSpectraError):
    """One or more data rows are fully tied / identically zero where that is not allowed."""

    def __init__(self, rows, message=None):
        self.rows = list(rows)
        super().__init__(message or f"degenerate row(s): {self.rows}")


class ZeroScalingError(RankSpectraError):
    """Tie-adjustment scaling is zero for some row, so its inverse square root blows up."""

    def __init__(self, rows, message=None):
        self.rows = list(rows)
        super().__init__(message or f"zero scaling for row(s): {self.rows}")


class NumericError(RankSpectraError):
    """A numeric routine produced an untrustworthy result (failed residual check, NaN input)."""
