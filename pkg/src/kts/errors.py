"""Exceptions raised by the solver."""


class KTSError(Exception):
    """Base class for solver errors."""


class SingularJacobian(KTSError):
    """The Jacobian at a point is numerically singular."""


class NoConvergence(KTSError):
    """An iterative search failed to settle within its budget."""


class ZeroDirection(KTSError, ValueError):
    """A line was given with a zero direction vector."""


class BudgetExhausted(KTSError):
    """The patch budget ran out; ``result`` holds the partial result."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
