"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class KstError(Exception):
    """Base class for all package errors."""


class Graph6Error(KstError, ValueError):
    """A graph6 line could not be decoded."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class SizeError(KstError, ValueError):
    pass


class ParameterError(KstError, ValueError):
    pass


class DomainError(KstError, ValueError):
    pass


class SolverError(KstError, RuntimeError):
    """Power iteration did not converge; ``best`` holds the last iterate."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class BracketError(KstError, ValueError):
    pass


class CertificateError(KstError, ValueError):
    pass


class WitnessError(KstError, ValueError):
    pass


class PreconditionError(KstError, ValueError):
    pass


class ClassificationError(KstError, ValueError):
    pass


class MinorTimeout(KstError, TimeoutError):
    pass


class CapacityError(KstError, ValueError):
    pass


class MoveError(KstError, ValueError):
    """A rewiring move was requested where its path precondition fails."""
