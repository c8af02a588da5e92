"""Exception hierarchy shared by all modules."""


class DividingLinesError(Exception):
    """Base class for all library errors."""


class ShapeMismatch(DividingLinesError):
    """Ragged input or label length not matching a table dimension."""


class BoundViolation(DividingLinesError):
    """An entry exceeds the declared bound, or is not finite."""


class ParseError(DividingLinesError):
    """Non-numeric cell or malformed serialized table."""


class EmptyTable(DividingLinesError):
    """A table with zero rows or zero columns."""


class IndexOutOfRange(DividingLinesError):
    """An index sequence refers outside the table."""


class TooManyColumns(DividingLinesError):
    """Shattering check requested on more columns than the selector budget allows."""


class InvalidWitness(DividingLinesError):
    """A witness failed re-validation where a valid one was required."""


class BudgetExceeded(DividingLinesError):
    """Exact enumeration would exceed the configured tuple budget."""


class SearchBudgetExceeded(DividingLinesError):
    """Backtracking search hit its node budget before resolving existence."""


class EmptySubset(DividingLinesError):
    """An operation over a row subset received an empty subset."""


class EmptySelection(DividingLinesError):
    """An operation over a column selection received no columns."""


class SolverFailure(DividingLinesError):
    """The minimax solver could not certify the requested tolerance."""


class InvalidSize(DividingLinesError):
    """Generator size parameters violate the generator's constraints."""
