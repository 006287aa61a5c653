"""Exception hierarchy. Each class maps to one CLI exit code."""

from __future__ import annotations


class DijoinError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InvalidInputError(DijoinError, ValueError):
    exit_code = 2


class ChordalityError(InvalidInputError):
    """The underlying undirected graph is not chordal.

    ``cycle`` holds a chordless cycle of length >= 4 as a node sequence.
    """

    def __init__(self, message: str, cycle: list | None = None):
        super().__init__(message)
        self.cycle = cycle


class ResourceLimitError(DijoinError):
    exit_code = 3


class InvariantViolation(DijoinError, AssertionError):
    """An internal invariant failed; indicates a bug or a bad certificate."""

    exit_code = 1
