"""Exception hierarchy shared across the toolkit.

Each class maps to a CLI exit code: parse errors exit 2, validation
errors 3, numerical failures 4, resource exhaustion 5.
"""


class VarioscopeError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ParseError(VarioscopeError):
    """Input could not be parsed as a delimited table."""

    exit_code = 2


class SchemaError(ParseError):
    """Table parsed but does not satisfy the column contract."""


class ValidationError(VarioscopeError):
    """Well-formed input violating a precondition (bad coordinate, sizes)."""

    exit_code = 3


class NumericalError(VarioscopeError):
    """Numerical failure: singular design, Cholesky breakdown, degenerate fit."""

    exit_code = 4


class ResourceError(VarioscopeError):
    """A resource cap was hit (e.g. bootstrap attempt budget exhausted)."""

    exit_code = 5
