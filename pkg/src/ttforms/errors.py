"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """Evaluation requested outside the admissible modulus window."""


class BranchCutError(ValueError):
    """A square root or power argument landed on the principal branch cut."""


class PoleError(ValueError):
    """Evaluation at a pole of a special function."""


class ToleranceError(RuntimeError):
    """Requested tolerance was not reached within the work budget.

    Carries the best value obtained and its error estimate so callers can
    decide whether the partial result is still usable.
    """

    def __init__(self, message: str, value=None, estimate: float | None = None):
        super().__init__(message)
        self.value = value
        self.estimate = estimate
