"""Error taxonomy shared across the package.

Exit-code mapping for the CLI lives in ``cli.py``: input-side problems
(bad files, bad arguments, violated preconditions) map to exit code 2,
computational failures (capacity, internal consistency) to exit code 1.
"""


class CoxheckeError(Exception):
    """Base class for all package errors."""


class InputError(CoxheckeError, ValueError):
    """Malformed or mutually inconsistent user input."""


class ParseError(InputError):
    """Unparseable group file or Hecke expression; carries position info."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class DomainError(CoxheckeError, ValueError):
    """Operation applied outside its mathematical domain."""


class PreconditionError(CoxheckeError, ValueError):
    """A stated hypothesis of the requested computation is violated."""


class CapacityError(CoxheckeError, RuntimeError):
    """Enumeration would exceed the configured resource cap."""


class ConsistencyError(CoxheckeError, RuntimeError):
    """Two independent computations of the same quantity disagree."""
