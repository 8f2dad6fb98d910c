"""Exception types shared across the package."""

from __future__ import annotations


class BlockGraphError(Exception):
    """Base class for all package-specific errors."""


class ParseError(BlockGraphError):
    """Malformed graph or block-class text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeCapError(BlockGraphError):
    """An operation was asked to run beyond its hard size cap."""


class BudgetExceededError(BlockGraphError):
    """The solver would need more branches than the configured budget allows."""


class ClassViolationError(BlockGraphError):
    """Input graph is outside the graph class the algorithm requires.

    ``witness`` holds a vertex set exhibiting the violation (an induced
    copy of the forbidden pattern).
    """

    def __init__(self, message: str, witness: tuple[int, ...] = ()):
        self.witness = tuple(witness)
        super().__init__(message)


class TrivialComponentError(BlockGraphError):
    """A rooted block-cut forest was requested for a graph with a component
    that has no cutvertex; strip trivial components first."""
