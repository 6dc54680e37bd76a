"""Exception hierarchy shared by every layer of the engine."""

from __future__ import annotations


class SolderError(Exception):
    """Base class for all engine errors."""


class ChartMismatch(SolderError):
    pass


class UnknownVariable(SolderError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument
        return Exception.__str__(self)


class VariableClash(SolderError):
    pass


class NegativePower(SolderError):
    pass


class LaurentZeroSubstitution(SolderError):
    pass


class NonPolynomialExponent(SolderError):
    pass


class DegreeMismatch(SolderError):
    pass


class NotInvertible(SolderError):
    pass


class NotAUnit(SolderError):
    pass


class NotPoisson(SolderError):
    pass


class NotJacobi(SolderError):
    pass


class PreconditionFailed(SolderError):
    pass


class NondegeneracyFailure(SolderError):
    pass


class NotTangentFunction(SolderError):
    pass


class NotInvolution(SolderError):
    pass


class NotPreserved(SolderError):
    """Raised when a map fails to preserve a tensor; ``defect`` holds the difference."""

    def __init__(self, message: str, defect=None):
        super().__init__(message)
        self.defect = defect


class LocusNotCoordinate(SolderError):
    pass


class UnknownExample(SolderError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class ParseError(SolderError, SyntaxError):
    """Syntax error carrying a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        SyntaxError.__init__(self, f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column
        self.lineno = line
        self.offset = column

    def __str__(self) -> str:
        return f"{self.message} (line {self.line}, column {self.column})"


class ScriptNameError(SolderError, NameError):
    """Unresolved or duplicate name in a check script."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"{message} (line {line})" if line else message)
        self.line = line
