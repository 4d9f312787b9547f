"""
Errors
"""

from typing import Optional


class SyzygyError(Exception):
    """
    Base error for every failure the command line reports.

    Carries a human readable ``detail`` and, when the failure points at a
    specific place in the input, a ``location`` such as ``points[3]``.
    """

    exit_code = 2

    def __init__(self, detail: str, location: Optional[str] = None):
        super().__init__(detail)
        self.detail = detail
        self.location = location

    def __str__(self) -> str:
        if self.location:
            return f"{self.location}: {self.detail}"
        return self.detail


class InvalidFieldError(SyzygyError):
    """The modulus is not an admissible prime."""


class PointSetError(SyzygyError):
    """A point set contains a zero, malformed or repeated point."""


class PreconditionError(SyzygyError):
    """An operation was called outside its domain."""


class GenericityError(SyzygyError):
    """Random sampling never produced a certified generic point set."""


class BudgetExceededError(SyzygyError):
    """A search or enumeration would exceed its configured budget."""


class LinkageError(SyzygyError):
    """Two forms do not link the given point set."""


class InvariantError(SyzygyError):
    """A computation contradicted a proven statement."""

    exit_code = 3
