"""Exception hierarchy shared by all qsatlab modules."""


class QsatLabError(Exception):
    """Base class for every error raised by this package."""


# --- formula / DIMACS ------------------------------------------------------

class DimacsSyntaxError(QsatLabError):
    """Malformed DIMACS input (bad header, bad token, count mismatch)."""


class MixedWidthError(QsatLabError):
    """A clause's width differs from the formula's uniform width k."""


class DuplicateVariableError(QsatLabError):
    """The same variable occurs more than once inside one clause."""


class IndexOutOfRangeError(QsatLabError):
    """A literal references a variable outside 1..n."""


class PartialEvaluationError(QsatLabError):
    """An evaluation does not cover every variable of the formula."""


class TooManyVariablesError(QsatLabError):
    """Brute-force enumeration was asked for more variables than allowed."""


# --- linear algebra --------------------------------------------------------

class DimensionMismatchError(QsatLabError):
    """Operands have incompatible dimensions."""


class DimensionCapError(QsatLabError):
    """A vector or matrix would exceed the configured dimension cap."""


class NotHermitianError(QsatLabError):
    """Matrix is not (numerically) equal to its conjugate transpose."""


class NotPSDError(QsatLabError):
    """Matrix has an eigenvalue significantly below zero."""


class NoConvergenceError(QsatLabError):
    """Iterative eigenvalue computation failed to converge."""


# --- quantum assignments ---------------------------------------------------

class SourceUnsatisfiedError(QsatLabError):
    """The evaluation used to build a quantum assignment does not satisfy the formula."""


class ZeroScaleError(QsatLabError):
    """The scalar multiplier of a quantum assignment must be nonzero."""


# --- checker ---------------------------------------------------------------

class NotDiagonalError(QsatLabError):
    """The diagonal oracle was given a non-diagonal matrix."""


class EmptyInstanceError(QsatLabError):
    """A decision was requested for an empty set of quantum assignments."""


# --- experiments -----------------------------------------------------------

class EqualVarSetsError(QsatLabError):
    """The selected clause pair has identical variable sets."""


class UnsatisfiableFormulaError(QsatLabError):
    """The operation requires a satisfiable formula."""


class BoundsExceededError(QsatLabError):
    """A sweep configuration exceeds the configured enumeration bounds."""


class GoldenMismatchError(QsatLabError):
    """A reconstructed object differs from its frozen golden value."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
