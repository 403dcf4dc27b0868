"""Failure classes shared across the package."""


class MfssaError(Exception):
    """Base class for errors raised by this package."""


class NumericError(MfssaError):
    """A numerical routine produced non-finite values or failed to converge."""


class ProjectionError(MfssaError):
    """Least-squares projection onto a basis failed (rank deficiency)."""

    def __init__(self, message: str, condition_number: float | None = None):
        super().__init__(message)
        self.condition_number = condition_number
