"""Exception hierarchy shared by all modules."""


class OphhError(Exception):
    """Base class for every error raised by the package."""


class InputError(OphhError, ValueError):
    """Malformed or inconsistent user input (shapes, JSON, parameters)."""


class PreconditionError(OphhError, ValueError):
    """A mathematical precondition of an operation does not hold."""


class DomainError(PreconditionError):
    """A scalar or an eigenvalue lies outside the domain of a function."""


class DecompositionError(OphhError, RuntimeError):
    """The Hermitian eigensolver failed or produced an inaccurate result."""


class QuadratureError(OphhError, RuntimeError):
    """An adaptive quadrature did not reach its tolerance within its budget."""

    def __init__(self, message, error_estimate=None):
        super().__init__(message)
        self.error_estimate = error_estimate


class GenerationError(OphhError, RuntimeError):
    """A random generator failed its own post-condition check."""
