"""Exception hierarchy shared by every module."""

from __future__ import annotations

from typing import Iterable, Optional


class DcontError(Exception):
    """Base class for all library errors."""


class ShapeNotInContainer(DcontError):
    pass


class PositionOutOfRange(DcontError):
    pass


class ContainerMismatch(DcontError):
    pass


class ShapeNotPreserved(DcontError):
    """A comultiplication changed the outer shape, so it is not a container comonad."""


class FuelExhausted(DcontError):
    """An observation needed more unfolding than the fuel allows."""


class UnknownName(DcontError):
    pass


class MalformedNesting(DcontError):
    pass


class NonWellfounded(DcontError):
    """A recursive (inductive) construction met an infinite descent."""


class EvalError(DcontError):
    """Runtime failure while evaluating a DSL expression."""


class ParseError(DcontError):
    def __init__(self, message: str, line: int, column: int, expected: Optional[Iterable[str]] = None):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected or ())))
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)
