"""
Exception hierarchy for the vk toolkit.

The CLI maps ``InputError`` to exit code 2, ``BudgetExceeded`` to 3 and
``InvariantViolation`` to 4.
"""

from typing import Optional


class VKError(Exception):
    """Base class for all vk errors."""


class InputError(VKError):
    """Raised when user supplied data is malformed or out of range."""


class DimensionMismatch(InputError):
    """Raised when matrix and vector shapes disagree."""


class ChainComplexError(InputError):
    """Raised when boundary matrices do not compose to zero."""


class WordSyntaxError(InputError):
    """Raised when a group word cannot be parsed."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class BudgetExceeded(VKError):
    """Raised when a search, retry or enumeration budget runs out."""


class GenericPositionError(BudgetExceeded):
    """Raised when no generic map could be sampled within the retry budget."""


class DegenerateProjection(VKError):
    """Raised when a projection direction is not generic for a spatial graph."""


class InvariantViolation(VKError):
    """Raised when an internal consistency check fails."""
