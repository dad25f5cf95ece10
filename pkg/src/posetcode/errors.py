"""Exception hierarchy shared by every module."""

from __future__ import annotations


class PosetCodeError(Exception):
    """Base class for all errors raised by :mod:`posetcode`."""


class RangeError(PosetCodeError, ValueError):
    pass


class CycleError(PosetCodeError, ValueError):
    pass


class InvalidIdeal(PosetCodeError, ValueError):
    pass


class SizeMismatch(PosetCodeError, ValueError):
    pass


class NotUnique(PosetCodeError, ValueError):
    pass


class ShapeMismatch(PosetCodeError, ValueError):
    pass


class CapExceeded(PosetCodeError, ValueError):
    pass


class BudgetExceeded(PosetCodeError, RuntimeError):
    pass


class ParseError(PosetCodeError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
