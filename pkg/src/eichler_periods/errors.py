"""
Error types and precondition helpers for Eichler Periods
"""

from typing import Optional, Type


class EichlerError(Exception):
    """Base class for all library errors"""


class DomainError(EichlerError, ValueError):
    """Argument outside the domain where the quantity is defined"""


class NonCoprimeError(DomainError):
    """Integer pair that must be coprime is not"""


class TruncationError(EichlerError):
    """Requested order or accuracy exceeds what the stored data supports"""

    def __init__(self, message: str, achieved: Optional[float] = None):
        super().__init__(message)
        self.achieved = achieved


class ToleranceError(EichlerError):
    """Numerical procedure could not reach the requested tolerance"""

    def __init__(self, message: str, achieved: Optional[float] = None):
        super().__init__(message)
        self.achieved = achieved


class RouteDisagreementError(EichlerError):
    """Two independent evaluation routes disagree beyond tolerance"""

    def __init__(self, message: str, first: complex, second: complex):
        super().__init__(message)
        self.first = first
        self.second = second
        self.gap = abs(first - second)


class ConstantChannelError(EichlerError):
    """A constant term was requested for a form with kappa != 0"""


class HolomorphicChannelError(DomainError):
    """Non-holomorphic kernel evaluated on a holomorphic channel"""


class SingularSystemError(EichlerError):
    """Linear system for supplementary coefficients is singular"""


class UsageError(EichlerError):
    """Bad command line input"""


class PrecisionWarning(UserWarning):
    """Result is computed in a regime with noticeable loss of precision"""


def require(
    condition: bool, message: str, error: Type[EichlerError] = EichlerError
) -> None:
    """Raise ``error(message)`` unless ``condition`` holds"""
    if not condition:
        raise error(message)
