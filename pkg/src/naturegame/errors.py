"""Exception hierarchy shared across the package."""

from __future__ import annotations


class GameError(Exception):
    """Base class for all errors raised by naturegame."""


class DimensionError(GameError, ValueError):
    """Operand shapes do not agree, or a matrix is empty."""


class ArgumentError(GameError, ValueError):
    """An argument is outside the domain the operation accepts."""


class ValidationError(GameError, ValueError):
    """Input data violates a domain invariant.

    ``field`` names the offending location, e.g. ``"t[3]"`` or ``"r[2][2]"``.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ParseError(GameError, ValueError):
    """Malformed input text. ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class SolverError(GameError, RuntimeError):
    """A numerical solver failed to terminate or hit an impossible state."""


class CapError(GameError, ValueError):
    """Problem dimensions exceed a brute-force solver's cap."""
