"""Gamma and Beta functions for positive real arguments."""
import math

from .errors import InputError

__all__ = ["log_gamma", "beta"]


def log_gamma(x: float) -> float:
    """``log Gamma(x)`` for ``x > 0``."""
    if not x > 0:
        raise InputError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


# Below this bound Gamma ratios neither overflow nor underflow, and math.gamma
# is exact at small integers, so beta(2, 2) == 1/6 holds bit for bit.
_DIRECT_GAMMA_MAX = 100.0


def beta(x: float, y: float) -> float:
    """Euler Beta function ``Gamma(x) Gamma(y) / Gamma(x + y)``.

    Moderate arguments use ``math.gamma`` directly; larger ones go through
    ``exp(lgamma(x) + lgamma(y) - lgamma(x + y))``.
    """
    if not (x > 0 and y > 0):
        raise InputError(f"beta needs positive arguments, got ({x}, {y})")
    if x + y <= _DIRECT_GAMMA_MAX:
        big, small = max(x, y), min(x, y)
        return math.gamma(big) / math.gamma(x + y) * math.gamma(small)
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))
