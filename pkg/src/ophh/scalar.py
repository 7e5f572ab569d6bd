"""Scalar s-convexity: grid falsifiers and Hermite-Hadamard type bounds.

The grid checks can only refute membership.  A verdict with ``holds=True``
means "not refuted on the grid" and is rendered that way by :meth:`describe`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .functions import domain_lower, evaluate
from .quadrature import adaptive_simpson
from .reports import InequalityReport, Side
from .special import beta

__all__ = [
    "ScalarVerdict",
    "T_MAX",
    "GRID_DENSITY",
    "grid_falsify",
    "is_s_convex_second",
    "is_s_convex_first",
    "check_sense_comparisons",
    "mean_integral",
    "check_scalar_hh",
    "check_pachpatte",
    "check_kirmaci",
]

T_MAX = 10.0
GRID_DENSITY = 201
GRID_TOL = 1e-12
SCALAR_ABS_TOL = 1e-11


@dataclass(frozen=True)
class ScalarVerdict:
    holds: bool
    max_violation: float
    witness: tuple[float, float, float] | None = None
    tolerance: float = GRID_TOL

    def describe(self) -> str:
        if self.holds:
            return "not refuted on grid"
        x, y, lam = self.witness
        return f"refuted at x={x:g}, y={y:g}, weight={lam:g} (violation {self.max_violation:.3e})"


def grid_falsify(phi, s: float, points, weights, sense: str = "second", tol: float = GRID_TOL):
    """Search a grid for violations of s-convexity of ``phi``.

    ``phi`` maps a 1-D array of points to values of shape ``(n,)`` or
    ``(n, k)``; the second form checks ``k`` functions at once and returns a
    list of verdicts.  ``sense="second"`` tests
    ``phi(w x + (1-w) y) <= w^s phi(x) + (1-w)^s phi(y)``; ``sense="first"``
    uses weights ``w`` and ``v = (1 - w^s)^(1/s)`` with
    ``phi(w x + v y) <= w^s phi(x) + (1 - w^s) phi(y)``.
    """
    if not 0.0 < s <= 1.0:
        raise InputError(f"s must lie in (0, 1], got {s}")
    if sense not in ("first", "second"):
        raise InputError(f"unknown sense {sense!r}")
    pts = np.asarray(points, dtype=float)
    p = len(pts)
    base = np.asarray(phi(pts), dtype=float)
    multi = base.ndim == 2
    if not multi:
        base = base[:, None]
    k = base.shape[1]
    best = np.full(k, -np.inf)
    where = [None] * k
    X = pts[:, None]
    Y = pts[None, :]
    for w in np.asarray(weights, dtype=float):
        ws = w**s
        if sense == "second":
            other = 1.0 - w
            other_s = other**s
        else:
            other_s = 1.0 - ws
            other = other_s ** (1.0 / s) if other_s > 0 else 0.0
        mixed = (w * X + other * Y).ravel()
        lhs = np.asarray(phi(mixed), dtype=float).reshape(p, p, k)
        rhs = ws * base[:, None, :] + other_s * base[None, :, :]
        viol = (lhs - rhs).reshape(p * p, k)
        idx = viol.argmax(axis=0)
        top = viol[idx, np.arange(k)]
        better = top > best
        for j in np.nonzero(better)[0]:
            best[j] = top[j]
            i, jj = divmod(int(idx[j]), p)
            where[j] = (float(pts[i]), float(pts[jj]), float(w))
    verdicts = [
        ScalarVerdict(bool(best[j] <= tol), float(best[j]), None if best[j] <= tol else where[j], tol)
        for j in range(k)
    ]
    return verdicts if multi else verdicts[0]


def _grid(t_max: float, density: int) -> tuple[np.ndarray, np.ndarray]:
    if density < 2:
        raise InputError(f"grid_density must be >= 2, got {density}")
    return np.linspace(0.0, t_max, density), np.linspace(0.0, 1.0, density)


def is_s_convex_second(f, s: float, grid_density: int = GRID_DENSITY, t_max: float = T_MAX) -> ScalarVerdict:
    """Grid falsifier for membership of ``f`` in the second-sense class."""
    pts, ws = _grid(t_max, grid_density)
    return grid_falsify(lambda t: f(t), s, pts, ws, "second")


def is_s_convex_first(f, s: float, grid_density: int = GRID_DENSITY, t_max: float = T_MAX) -> ScalarVerdict:
    """Grid falsifier for membership of ``f`` in the first-sense class."""
    pts, ws = _grid(t_max, grid_density)
    return grid_falsify(lambda t: f(t), s, pts, ws, "first")


@dataclass
class ImplicationRow:
    label: str
    status: str  # "consistent", "violated" or "vacuous"
    premise: str
    conclusion: ScalarVerdict | None = None


@dataclass
class SenseComparison:
    rows: list[ImplicationRow] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(r.status != "violated" for r in self.rows)

    def row(self, label: str) -> ImplicationRow:
        return next(r for r in self.rows if r.label == label)


def check_sense_comparisons(f, s1: float, s2: float, grid_density: int = 61, t_max: float = T_MAX) -> SenseComparison:
    """Test the three implications between the first- and second-sense classes.

    (i)   second-sense at ``s`` and ``f(0) = 0`` gives first-sense at ``s``
          (checked for ``s = s2``);
    (ii)  second-sense at ``s2`` and ``f(0) = 0`` gives second-sense at ``s1``;
    (iii) first-sense at ``s2`` and ``f(0) <= 0`` gives first-sense at ``s1``.
    An implication whose premise fails is reported as vacuous.
    """
    if not 0.0 < s1 < s2 <= 1.0:
        raise InputError(f"need 0 < s1 < s2 <= 1, got s1={s1}, s2={s2}")
    f0 = float(f(np.array([0.0]))[0])
    second_s2 = is_s_convex_second(f, s2, grid_density, t_max)
    first_s2 = is_s_convex_first(f, s2, grid_density, t_max)

    def row(label, premise_ok, why, conclusion):
        if not premise_ok:
            return ImplicationRow(label, "vacuous", why)
        verdict = conclusion()
        return ImplicationRow(label, "consistent" if verdict.holds else "violated", why, verdict)

    out = SenseComparison()
    zero = f0 == 0.0
    out.rows.append(row(
        "(i)", second_s2.holds and zero,
        f"second-sense s={s2}: {second_s2.describe()}; f(0)={f0:g}",
        lambda: first_s2,
    ))
    out.rows.append(row(
        "(ii)", second_s2.holds and zero,
        f"second-sense s={s2}: {second_s2.describe()}; f(0)={f0:g}",
        lambda: is_s_convex_second(f, s1, grid_density, t_max),
    ))
    out.rows.append(row(
        "(iii)", first_s2.holds and f0 <= 0.0,
        f"first-sense s={s2}: {first_s2.describe()}; f(0)={f0:g}",
        lambda: is_s_convex_first(f, s1, grid_density, t_max),
    ))
    return out


def _check_interval(f, a: float, b: float):
    if not a < b:
        raise InputError(f"need a < b, got a={a}, b={b}")
    evaluate(f, a)


def mean_integral(f, a: float, b: float, tol: float = SCALAR_ABS_TOL) -> float:
    """``(1 / (b - a)) * integral of f over [a, b]`` by adaptive Simpson."""
    _check_interval(f, a, b)
    return adaptive_simpson(lambda t: f(t), a, b, tol=tol).value / (b - a)


def _scalar_side(label: str, lhs: float, rhs: float, eps: float = 1e-9) -> Side:
    scale = max(1.0, abs(lhs), abs(rhs))
    return Side(label, float(rhs - lhs), eps * scale, scale)


def check_scalar_hh(f, s: float, a: float, b: float) -> InequalityReport:
    """Midpoint term, mean value and endpoint term for an s-convex ``f``.

    left:  ``2^(s-1) f((a+b)/2) <= mean``
    right: ``mean <= (f(a) + f(b)) / (s + 1)``
    """
    _check_interval(f, a, b)
    mid = 2.0 ** (s - 1.0) * evaluate(f, 0.5 * (a + b))
    mean = mean_integral(f, a, b)
    end = (evaluate(f, a) + evaluate(f, b)) / (s + 1.0)
    return InequalityReport(
        "scalar-hh",
        [_scalar_side("left", mid, mean), _scalar_side("right", mean, end)],
        inputs={"f": f, "s": s, "a": a, "b": b},
        values={"midpoint_term": mid, "mean": mean, "endpoint_term": end},
    )


def _mn(f, g, a, b):
    fa, fb, ga, gb = (evaluate(h, t) for h, t in ((f, a), (f, b), (g, a), (g, b)))
    return fa * ga + fb * gb, fa * gb + fb * ga


def _product_mean(f, g, a, b):
    return adaptive_simpson(lambda t: f(t) * g(t), a, b, tol=SCALAR_ABS_TOL).value / (b - a)


def _precondition(f, s, a, b, density, name):
    """Nonnegativity and s-convexity of ``f`` restricted to ``[a, b]``."""
    pts = np.linspace(a, b, density)
    vals = f(pts)
    if np.any(vals < -GRID_TOL):
        return f"{name} is negative on [{a:g}, {b:g}]"
    v = grid_falsify(lambda t: f(t), s, pts, np.linspace(0.0, 1.0, density), "second")
    if not v.holds:
        return f"{name} is not {s:g}-convex on [{a:g}, {b:g}]: {v.describe()}"
    return None


def check_pachpatte(f, g, a: float, b: float, grid_density: int = 41) -> InequalityReport:
    """Both product inequalities for nonnegative convex ``f`` and ``g``.

    first:  ``mean(fg) <= M/3 + N/6``
    second: ``2 f(m) g(m) <= mean(fg) + M/6 + N/3`` with ``m`` the midpoint.
    A failed precondition is flagged and the check is skipped.
    """
    _check_interval(f, a, b)
    _check_interval(g, a, b)
    inputs = {"f": f, "g": g, "a": a, "b": b}
    for h, name in ((f, "f"), (g, "g")):
        why = _precondition(h, 1.0, a, b, grid_density, name)
        if why:
            return InequalityReport("pachpatte", inputs=inputs, skipped=why)
    m, n = _mn(f, g, a, b)
    mean = _product_mean(f, g, a, b)
    c = 0.5 * (a + b)
    midprod = 2.0 * evaluate(f, c) * evaluate(g, c)
    first_rhs = m / 3.0 + n / 6.0
    second_rhs = mean + m / 6.0 + n / 3.0
    return InequalityReport(
        "pachpatte",
        [_scalar_side("first", mean, first_rhs), _scalar_side("second", midprod, second_rhs)],
        inputs=inputs,
        values={"M": m, "N": n, "mean": mean, "midpoint_product": midprod,
                "first_bound": first_rhs, "second_bound": second_rhs},
    )


def check_kirmaci(f, s1: float, g, s2: float, a: float, b: float, grid_density: int = 41) -> InequalityReport:
    """``mean(fg) <= M / (s1 + s2 + 1) + B(s1 + 1, s2 + 1) N`` on ``[a, b]``.

    The mean uses the ``1 / (b - a)`` normaliser over ``[a, b]``.
    """
    _check_interval(f, a, b)
    _check_interval(g, a, b)
    inputs = {"f": f, "s1": s1, "g": g, "s2": s2, "a": a, "b": b}
    for h, s, name in ((f, s1, "f"), (g, s2, "g")):
        why = _precondition(h, s, a, b, grid_density, name)
        if why:
            return InequalityReport("kirmaci", inputs=inputs, skipped=why)
    m, n = _mn(f, g, a, b)
    c_m = 1.0 / (s1 + s2 + 1.0)
    c_n = beta(s1 + 1.0, s2 + 1.0)
    mean = _product_mean(f, g, a, b)
    bound = c_m * m + c_n * n
    return InequalityReport(
        "kirmaci",
        [_scalar_side("bound", mean, bound)],
        inputs=inputs,
        values={"M": m, "N": n, "mean": mean, "bound": bound, "coef_M": c_m, "coef_N": c_n},
    )
