"""Operator segments ``(1 - t) A + t B`` and integrals along them."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .matrices import apply_function, apply_function_batch, spectral_norm
from .quadrature import GL_ORDER, adaptive_gauss_legendre, adaptive_simpson

__all__ = [
    "OperatorIntegralResult",
    "segment_point",
    "segment_stack",
    "operator_integral",
    "quadratic_forms",
    "paired_scalar_integral",
    "closed_form_square_integral",
]

OPERATOR_REL_TOL = 1e-10
SCALAR_ABS_TOL = 1e-11


@dataclass(frozen=True)
class OperatorIntegralResult:
    """``value`` approximates the integral; ``error_estimate`` is heuristic."""

    value: np.ndarray
    error_estimate: float
    nodes_used: int


def _pair(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise InputError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def segment_point(a, b, t: float) -> np.ndarray:
    if not 0.0 <= t <= 1.0:
        raise InputError(f"segment parameter must lie in [0, 1], got {t}")
    a, b = _pair(a, b)
    if t == 0.0:
        return a.copy()
    if t == 1.0:
        return b.copy()
    m = (1.0 - t) * a + t * b
    return 0.5 * (m + m.conj().T)


def segment_stack(a, b, ts) -> np.ndarray:
    """Stack of segment points, shape ``(len(ts), n, n)``."""
    ts = np.asarray(ts, dtype=float)[:, None, None]
    m = (1.0 - ts) * a[None] + ts * b[None]
    return 0.5 * (m + np.swapaxes(m, -1, -2).conj())


def operator_integral(f, a, b) -> OperatorIntegralResult:
    """Integral over ``[0, 1]`` of ``f((1 - t) A + t B)``.

    Endpoint spectra and the midpoint are checked against the domain of
    ``f`` first; every quadrature node is checked again when evaluated.
    """
    a, b = _pair(a, b)
    for m in (a, 0.5 * (a + b), b):
        apply_function(f, m)

    def integrand(ts):
        return apply_function_batch(f, segment_stack(a, b, ts))

    res = adaptive_gauss_legendre(integrand, 0.0, 1.0, rel_tol=OPERATOR_REL_TOL)
    value = res.value
    value = 0.5 * (value + value.conj().T)
    return OperatorIntegralResult(value, res.error, res.intervals * GL_ORDER)


def quadratic_forms(mats: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """``<M x, x>`` for a stack of matrices and a stack of vectors.

    ``mats`` is ``(n, n)`` or ``(k, n, n)``; ``xs`` is ``(n,)`` or ``(m, n)``.
    The result drops the axes that were absent from the inputs.
    """
    mats = np.asarray(mats)
    xs = np.asarray(xs, dtype=complex)
    single_m = mats.ndim == 2
    single_x = xs.ndim == 1
    m3 = mats[None] if single_m else mats
    x2 = xs[None] if single_x else xs
    out = np.einsum("ki,tij,kj->tk", x2.conj(), m3, x2).real
    if single_x:
        out = out[:, 0]
    if single_m:
        out = out[0]
    return out


def paired_scalar_integral(f, g, a, b, x, tol: float = SCALAR_ABS_TOL):
    """Integral over ``[0, 1]`` of ``<f(C_t) x, x> <g(C_t) x, x>``, ``C_t = tA + (1 - t)B``.

    ``x`` may be a single unit vector or a stack ``(m, n)`` of them, in which
    case an array of ``m`` integrals is returned from one adaptive pass.
    """
    a, b = _pair(a, b)
    xs = np.asarray(x, dtype=complex)
    norms = np.linalg.norm(np.atleast_2d(xs), axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-12):
        raise InputError("x must have unit norm")
    for m in (a, b):
        apply_function(f, m)
        apply_function(g, m)

    def integrand(ts):
        stack = segment_stack(b, a, ts)
        return quadratic_forms(apply_function_batch(f, stack), xs) * quadratic_forms(
            apply_function_batch(g, stack), xs
        )

    return adaptive_simpson(integrand, 0.0, 1.0, tol=tol).value


def closed_form_square_integral(a, b) -> np.ndarray:
    """Exact value of the integral of ``((1 - t) A + t B)^2`` over ``[0, 1]``."""
    a, b = _pair(a, b)
    return (a @ a + b @ b) / 3.0 + (a @ b + b @ a) / 6.0
