"""Exception hierarchy shared by every mzlab module."""

from __future__ import annotations


class MzlabError(ValueError):
    """Base class for all user-facing errors raised by mzlab."""


class FieldError(MzlabError):
    """Invalid modulus, residue out of range, or inversion of zero."""


class ZeroPolynomialError(MzlabError):
    """An operation that needs a degree was handed the zero polynomial."""


class ShapeError(MzlabError):
    """Variable counts or triangular dependency shape do not line up."""


class CapExceeded(MzlabError):
    """A degree cap or enumeration budget would be exceeded."""


class InvariantViolation(AssertionError):
    """An internal certificate failed its own replay check."""


class ParseError(MzlabError):
    """A request document failed validation; ``path`` names the offending field."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
        self.message = message
