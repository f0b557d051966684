"""Exception hierarchy shared by every kronfact module."""


class KronfactError(Exception):
    """Base class for all library errors."""


class DomainError(KronfactError, ValueError):
    """An argument lies outside the domain of the operation."""


class EmptyPatternError(DomainError):
    """The operation needs at least one nonzero entry."""


class ConsistencyError(KronfactError):
    """A recovered factor failed its Kronecker re-verification."""


class NonConvergenceError(KronfactError):
    """Power iteration hit its iteration cap.

    The last iterate is attached so callers can still inspect it.
    """

    def __init__(self, message, sigma=None, u=None, v=None, residual=None):
        super().__init__(message)
        self.sigma = sigma
        self.u = u
        self.v = v
        self.residual = residual


class ParseError(KronfactError):
    """Malformed input file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
