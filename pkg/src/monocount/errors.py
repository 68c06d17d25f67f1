"""Exceptions shared across the package.

The CLI maps these onto exit codes: usage/parse errors exit 1,
internal inconsistencies exit 2, oracle limit violations exit 3.
"""


class MonocountError(Exception):
    """Base class for package errors."""


class DimacsParseError(MonocountError):
    """Malformed DIMACS input; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InternalInconsistencyError(MonocountError):
    """An exact-arithmetic invariant failed (signals an enumeration bug)."""


class LimitExceededError(MonocountError):
    """A brute-force oracle was asked to exceed its configured limits."""
