"""Exception hierarchy shared across the toolkit."""


class NovikovError(Exception):
    """Base class for all library errors."""


class FieldMismatch(NovikovError):
    """Operands live in different scalar fields."""


class DivisionByZero(NovikovError, ZeroDivisionError):
    """Exact division or inversion of a zero scalar."""


class ShapeMismatch(NovikovError):
    """Tensor shapes or bases are incompatible."""


class DegreeCapExceeded(NovikovError):
    """A band polynomial grew past the configured degree cap."""


class DegenerateForm(NovikovError):
    """A bilinear form (or the coefficient matrix of a 2-tensor) is singular."""


class NotDerivation(NovikovError):
    pass


class NotCommAssoc(NovikovError):
    pass


class NotZinbiel(NovikovError):
    pass


class NotNovikov(NovikovError):
    pass


class NotRightNovikov(NovikovError):
    pass


class NotLie(NovikovError):
    pass


class NotPreNovikov(NovikovError):
    pass


class NotRepresentation(NovikovError):
    pass


class NotOOperator(NovikovError):
    pass


class NotMatchedPair(NovikovError):
    pass


class DualNotNovikov(NovikovError):
    pass


class CapExceeded(NovikovError):
    """Search dimension above the configured enumeration cap."""


class ParseError(NovikovError):
    """Input file rejected; carries 1-based line/column."""

    def __init__(self, msg: str, line: int, column: int = 1):
        super().__init__(f"line {line}, col {column}: {msg}")
        self.line = line
        self.column = column


class UnknownBasisName(ParseError):
    pass


class DuplicateEntry(ParseError):
    pass
