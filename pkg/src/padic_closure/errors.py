"""Exception hierarchy shared by the library and the CLI.

The CLI maps each class to an exit code: ParseError -> 2,
DomainError -> 3, PrecisionError -> 4.
"""


class ClosureError(Exception):
    """Base class for all errors raised by padic_closure."""


class ParseError(ClosureError, ValueError):
    """A problem file is malformed. ``location`` names the offending field."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class DomainError(ClosureError, ValueError):
    """An input violates a mathematical precondition (ramified prime, non-unit, ...)."""


class PrecisionError(ClosureError, ArithmeticError):
    """Working precision is insufficient to carry out an operation soundly."""
