"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GraphBurnError(Exception):
    """Base class for all errors raised by graphburn."""


class MalformedInput(GraphBurnError, ValueError):
    """Input graph data is out of range or otherwise invalid."""


class ParseError(MalformedInput):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyInstance(MalformedInput):
    """The instance contains no vertices."""


class MalformedSequence(GraphBurnError, ValueError):
    """A burning sequence is empty, out of range, or repeats a vertex."""


class GuardExceeded(GraphBurnError):
    """The brute-force oracle refused a graph above its size guard."""


class InternalError(GraphBurnError, AssertionError):
    """An internal invariant failed; results produced so far are not trustworthy."""
