"""Globally adaptive quadrature rules.

Both rules keep a pool of subintervals, estimate the error on each one and
bisect every interval whose error exceeds its share of the tolerance.  All
new nodes of one refinement round are evaluated in a single batched call,
so integrands should be vectorised over their first axis.  Results are
summed in ascending interval order, which keeps them bit-reproducible.
"""
from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .errors import QuadratureError

__all__ = ["QuadResult", "adaptive_simpson", "adaptive_gauss_legendre", "GL_ORDER"]

GL_ORDER = 16
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_ORDER)


class QuadResult(NamedTuple):
    value: np.ndarray | float
    error: float
    intervals: int


def _max_abs(arr: np.ndarray) -> np.ndarray:
    if arr.ndim == 1:
        return np.abs(arr)
    return np.abs(arr).reshape(arr.shape[0], -1).max(axis=1)


def adaptive_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-11,
    max_intervals: int = 2**20,
) -> QuadResult:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    ``f`` maps a 1-D array of nodes to an array whose first axis matches the
    nodes; trailing axes are integrated independently and the error is the
    worst one.  Each interval carries its five Simpson points; the local
    error estimate is ``|S2 - S1|`` (deliberately not divided by 15, which
    stays conservative near algebraic endpoint singularities) and the local
    value is the Richardson-corrected ``S2 + (S2 - S1) / 15``.
    """
    if not b > a:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    h = b - a
    pts = a + h * np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    vals = np.asarray(f(pts), dtype=float)
    lo = np.array([a])
    hi = np.array([b])
    fv = [vals[i : i + 1] for i in range(5)]

    while True:
        width = (hi - lo).reshape((-1,) + (1,) * (fv[0].ndim - 1))
        s1 = width / 6.0 * (fv[0] + 4.0 * fv[2] + fv[4])
        s2 = width / 12.0 * (fv[0] + 4.0 * fv[1] + 2.0 * fv[2] + 4.0 * fv[3] + fv[4])
        err = _max_abs(s2 - s1)
        total = float(err.sum())
        if total <= tol:
            order = np.argsort(lo, kind="stable")
            value = (s2 + (s2 - s1) / 15.0)[order].sum(axis=0)
            return QuadResult(value if value.ndim else float(value), total, len(lo))
        n = len(lo)
        split = err > tol / n
        if n + int(split.sum()) > max_intervals:
            raise QuadratureError(
                f"adaptive Simpson hit the cap of {max_intervals} intervals "
                f"(error estimate {total:.3e} > {tol:.1e})",
                error_estimate=total,
            )
        keep = ~split
        l, r = lo[split], hi[split]
        m = 0.5 * (l + r)
        q = 0.25 * (r - l)
        new_pts = np.concatenate([l + 0.5 * q, l + 1.5 * q, m + 0.5 * q, m + 1.5 * q])
        new = np.asarray(f(new_pts), dtype=float)
        k = len(l)
        n1, n2, n3, n4 = new[:k], new[k : 2 * k], new[2 * k : 3 * k], new[3 * k :]
        f0, f1, f2, f3, f4 = (v[split] for v in fv)
        lo = np.concatenate([lo[keep], l, m])
        hi = np.concatenate([hi[keep], m, r])
        fv = [
            np.concatenate([fv[0][keep], f0, f2]),
            np.concatenate([fv[1][keep], n1, n3]),
            np.concatenate([fv[2][keep], f1, f3]),
            np.concatenate([fv[3][keep], n2, n4]),
            np.concatenate([fv[4][keep], f2, f4]),
        ]


def _gl_panels(f, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Order-16 Gauss-Legendre value on each panel ``[lo_i, hi_i]``."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    vals = np.asarray(f(nodes))
    vals = vals.reshape((len(lo), GL_ORDER) + vals.shape[1:])
    w = (half[:, None] * _GL_W[None, :]).reshape((len(lo), GL_ORDER) + (1,) * (vals.ndim - 2))
    return (w * vals).sum(axis=1)


def _panel_norm(diff: np.ndarray) -> np.ndarray:
    if diff.ndim == 3:
        return np.linalg.norm(diff, 2, axis=(-2, -1))
    return _max_abs(diff)


def adaptive_gauss_legendre(
    f: Callable[[np.ndarray], np.ndarray],
    a: float = 0.0,
    b: float = 1.0,
    rel_tol: float = 1e-10,
    max_panels: int = 1024,
) -> QuadResult:
    """Composite order-16 Gauss-Legendre rule with local panel bisection.

    ``f`` maps nodes ``(k,)`` to matrices ``(k, n, n)`` (or scalars).  Each
    panel compares the one-panel rule with the rule on its two halves; the
    spectral norm of the difference is the panel's error.  Refinement stops
    once the summed error is below ``rel_tol * max(1, ||value||)``.  The
    summed error bounds the norm difference between the last two levels by
    the triangle inequality; it is an estimate, not a rigorous bound.
    """
    lo = np.array([a], dtype=float)
    hi = np.array([b], dtype=float)
    coarse = _gl_panels(f, lo, hi)
    mid = 0.5 * (lo + hi)
    halves = _gl_panels(f, np.concatenate([lo, mid]), np.concatenate([mid, hi]))
    fine = halves[:1] + halves[1:]
    left, right = halves[:1], halves[1:]

    while True:
        err = _panel_norm(fine - coarse)
        total = float(err.sum())
        order = np.argsort(lo, kind="stable")
        value = fine[order].sum(axis=0)
        scale = max(1.0, float(_panel_norm(value[None])[0]))
        if total <= rel_tol * scale:
            return QuadResult(value, total, 2 * len(lo))
        n = len(lo)
        split = err > rel_tol * scale / n
        if 2 * (n + int(split.sum())) > max_panels:
            raise QuadratureError(
                f"Gauss-Legendre refinement hit the cap of {max_panels} panels "
                f"(error estimate {total:.3e})",
                error_estimate=total,
            )
        keep = ~split
        l, r = lo[split], hi[split]
        m = 0.5 * (l + r)
        q1, q3 = 0.5 * (l + m), 0.5 * (m + r)
        quarters = _gl_panels(
            f, np.concatenate([l, q1, m, q3]), np.concatenate([q1, m, q3, r])
        )
        k = len(l)
        a1, a2, a3, a4 = quarters[:k], quarters[k : 2 * k], quarters[2 * k : 3 * k], quarters[3 * k :]
        lo = np.concatenate([lo[keep], l, m])
        hi = np.concatenate([hi[keep], m, r])
        coarse = np.concatenate([coarse[keep], left[split], right[split]])
        left = np.concatenate([left[keep], a1, a3])
        right = np.concatenate([right[keep], a2, a4])
        fine = left + right
