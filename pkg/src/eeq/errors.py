"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class EeqError(Exception):
    """Base class for all errors raised by :mod:`eeq`."""


class OverflowFault(EeqError, ArithmeticError):
    """A value left the host word range (64 bits); values never wrap."""


class ParseError(EeqError, ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{message} (line {line}, column {col})")


class ScopeError(EeqError, ValueError):
    """A point or bound lies outside the scope an operation was asked about."""


class MorphismError(EeqError, TypeError):
    """Mismatched source/target, or a function that is not equivalence preserving."""


class SurrogateError(EeqError, ValueError):
    """Invalid input to a stage construction (bad schedule, degenerate surrogate, bound too small)."""

    def __init__(self, message: str, invariant: str = "", min_n: int | None = None):
        self.invariant = invariant
        self.min_n = min_n
        super().__init__(message)
