"""Exception hierarchy shared by all eofbound modules."""


class EofBoundError(Exception):
    """Base class for every error raised by this package."""


class ConvergenceFailure(EofBoundError, ArithmeticError):
    """An eigenvalue or singular value routine did not converge."""


class NonSquare(EofBoundError, ValueError):
    pass


class NotHermitian(EofBoundError, ValueError):
    def __init__(self, deviation, tol):
        self.deviation = deviation
        self.tol = tol
        super().__init__(
            f"matrix is not Hermitian: max |M - M^H| = {deviation:.3e} > {tol:.1e}"
        )


class DimensionMismatch(EofBoundError, ValueError):
    pass


class ParameterOutOfRange(EofBoundError, ValueError):
    pass


class InvariantViolation(EofBoundError, ValueError):
    """A state failed one of the density-matrix or pure-state invariants.

    ``invariant`` names the violated condition and ``deviation`` is the
    measured amount by which it failed.
    """

    def __init__(self, invariant, deviation, message=None):
        self.invariant = invariant
        self.deviation = deviation
        super().__init__(
            message or f"{invariant} violated (deviation {deviation:.3e})"
        )


class LambdaExceedsSchmidtRank(EofBoundError, ValueError):
    def __init__(self, lam, m_eff):
        self.lam = lam
        self.m_eff = m_eff
        super().__init__(
            f"Lambda = {lam!r} exceeds the Schmidt rank bound {m_eff}; "
            "the input is not a valid state"
        )


class RankDeficiency(EofBoundError, ValueError):
    pass


class UnknownFamily(EofBoundError, ValueError):
    pass


class ParseError(EofBoundError, ValueError):
    """Malformed state file or generator spec.

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)
