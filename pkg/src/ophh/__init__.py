"""Numerical checks of Hermite-Hadamard type inequalities for operator s-convex functions."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DecompositionError,
    DomainError,
    GenerationError,
    InputError,
    OphhError,
    PreconditionError,
    QuadratureError,
)
from .functions import Affine, Cubic, ExampleFamily, Power, Quadratic  # noqa: E402
