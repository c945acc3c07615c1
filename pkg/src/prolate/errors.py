"""Exception hierarchy shared by all modules."""


class ProlateError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ProlateError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class PreconditionError(ProlateError, ValueError):
    """A hypothesis required by a bound or algorithm does not hold.

    ``hypotheses`` lists the violated conditions in human-readable form.
    """

    def __init__(self, message, hypotheses=()):
        super().__init__(message)
        self.hypotheses = tuple(hypotheses)


class BracketError(ProlateError):
    """Sturm counts show that the requested eigenvalue is not in the bracket."""


class ConvergenceError(ProlateError, RuntimeError):
    """An iterative method failed to converge within its iteration budget."""


class EscapeError(ProlateError, RuntimeError):
    """An ODE march left the open interval (-1, 1)."""


class ConsistencyError(ProlateError, RuntimeError):
    """Two independently computed quantities disagree beyond rounding."""
