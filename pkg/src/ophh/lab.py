"""Operator inequality checks and seeded trial suites.

Every check returns an :class:`~ophh.reports.InequalityReport` whose sides
hold the minimum eigenvalue (or scalar value) of ``rhs - lhs``.  A suite
that finds no violation is "no counterexample found in N trials"; nothing
here constitutes a proof.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import GenerationError, InputError, PreconditionError
from .functions import Cubic, Power, Quadratic, ScalarFunction
from .matrices import (
    EPS_REL,
    PsdVerdict,
    apply_function,
    apply_function_batch,
    decompose,
    is_psd,
    loewner_tolerance,
    pair_qualifies,
    random_hermitian,
    random_qualified_pair,
    random_unit_vector,
    rng_stream,
    spectral_norm,
)
from .reports import InequalityReport, Side, jsonable
from .scalar import grid_falsify
from .segment import operator_integral, paired_scalar_integral, quadratic_forms, segment_stack
from .special import beta

__all__ = [
    "LAMBDA_GRID",
    "CUBIC_A",
    "CUBIC_B",
    "check_theorem5",
    "check_theorem6",
    "check_theorem7",
    "check_theorem8",
    "mn_values",
    "check_lemma_positivity",
    "check_phi_equivalence",
    "check_operator_s_convexity",
    "check_subadditivity",
    "reproduce_cubic_counterexample",
    "cone_violation",
    "RandomQuadratic",
    "TrialSuite",
    "SuiteResult",
    "run_suite",
    "certify_operator_s_convexity",
    "THEOREMS",
]

LAMBDA_GRID = np.linspace(0.0, 1.0, 21)
CUBIC_A = np.array([[3.0, -1.0], [-1.0, 1.0]], dtype=complex)
CUBIC_B = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)


def _matrix_side(label: str, lhs: np.ndarray, rhs: np.ndarray, eps: float):
    diff = rhs - lhs
    diff = 0.5 * (diff + diff.conj().T)
    dec = decompose(diff, label)
    scale = max(1.0, spectral_norm(lhs), spectral_norm(rhs))
    side = Side(label, float(dec.eigenvalues[0]), eps * scale, scale)
    return side, dec.eigenvectors[:, 0]


def _scalar_side(label: str, lhs: float, rhs: float, eps: float) -> Side:
    scale = max(1.0, abs(lhs), abs(rhs))
    return Side(label, float(rhs - lhs), eps * scale, scale)


def _chain_report(name, terms, eps, inputs, values):
    """Report for the chain ``terms[0] <= terms[1] <= ...`` of (label, matrix)."""
    sides, vecs = [], []
    for (l1, m1), (l2, m2) in zip(terms, terms[1:]):
        side, vec = _matrix_side(f"{l1} <= {l2}", m1, m2, eps)
        sides.append(side)
        vecs.append(vec)
    report = InequalityReport(name, sides, inputs=inputs, values=values)
    if not report.holds:
        i = min(range(len(sides)), key=lambda j: sides[j].normalized_slack)
        report.witness = {"side": sides[i].label, "min_eig": sides[i].slack, "x": vecs[i]}
    return report


def check_theorem6(f, s: float, a, b, eps: float = EPS_REL) -> InequalityReport:
    """``2^(s-1) f((A+B)/2) <= int_0^1 f((1-t)A + tB) dt <= (f(A) + f(B)) / (s+1)``."""
    if not 0.0 < s <= 1.0:
        raise InputError(f"s must lie in (0, 1], got {s}")
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    integral = operator_integral(f, a, b)
    mid = 2.0 ** (s - 1.0) * apply_function(f, 0.5 * (a + b))
    end = (apply_function(f, a) + apply_function(f, b)) / (s + 1.0)
    left, lvec = _matrix_side("left", mid, integral.value, eps)
    right, rvec = _matrix_side("right", integral.value, end, eps)
    report = InequalityReport(
        "theorem6",
        [left, right],
        inputs={"f": f, "s": s},
        values={
            "midpoint_term": mid,
            "integral": integral.value,
            "endpoint_term": end,
            "integral_error_estimate": integral.error_estimate,
        },
    )
    if not report.holds:
        side, vec = (left, lvec) if left.normalized_slack < right.normalized_slack else (right, rvec)
        report.witness = {"side": side.label, "min_eig": side.slack, "x": vec}
    return report


def check_theorem5(f, a, b, eps: float = EPS_REL) -> InequalityReport:
    """The four-step refinement chain for an operator convex ``f``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    fa, fb = apply_function(f, a), apply_function(f, b)
    mid = apply_function(f, 0.5 * (a + b))
    quarters = 0.5 * (apply_function(f, 0.75 * a + 0.25 * b) + apply_function(f, 0.25 * a + 0.75 * b))
    integral = operator_integral(f, a, b).value
    ends = 0.5 * (fa + fb)
    upper = 0.5 * (mid + ends)
    terms = [
        ("midpoint", mid),
        ("quarter_mean", quarters),
        ("integral", integral),
        ("upper_mean", upper),
        ("endpoint_mean", ends),
    ]
    return _chain_report("theorem5", terms, eps, {"f": f}, dict(terms))


def mn_values(f, g, a, b, x):
    """``M(A,B)(x)`` and ``N(A,B)(x)``; ``x`` may be a stack of vectors."""
    fa, fb = quadratic_forms(apply_function(f, a), x), quadratic_forms(apply_function(f, b), x)
    ga, gb = quadratic_forms(apply_function(g, a), x), quadratic_forms(apply_function(g, b), x)
    return fa * ga + fb * gb, fa * gb + fb * ga


def _vector_stack(x):
    xs = np.asarray(x, dtype=complex)
    return xs[None] if xs.ndim == 1 else xs


def _per_vector_report(name, lhs, rhs, xs, eps, inputs, values):
    sides = [_scalar_side(f"x[{i}]", float(l), float(r), eps) for i, (l, r) in enumerate(zip(lhs, rhs))]
    report = InequalityReport(name, sides, inputs=inputs, values=values)
    if not report.holds:
        i = min(range(len(sides)), key=lambda j: sides[j].normalized_slack)
        report.witness = {"side": sides[i].label, "min_eig": sides[i].slack, "x": xs[i]}
    return report


def check_theorem7(f, s1: float, g, s2: float, a, b, x, eps: float = EPS_REL, integral=None) -> InequalityReport:
    """``int <f(C_t)x,x><g(C_t)x,x> dt <= M/(s1+s2+1) + B(s1+1, s2+1) N`` per vector."""
    xs = _vector_stack(x)
    lhs = paired_scalar_integral(f, g, a, b, xs) if integral is None else np.atleast_1d(integral)
    m, n = mn_values(f, g, a, b, xs)
    c_m = 1.0 / (s1 + s2 + 1.0)
    c_n = beta(s1 + 1.0, s2 + 1.0)
    rhs = c_m * m + c_n * n
    values = {"coef_M": c_m, "coef_N": c_n, "integral": lhs, "M": m, "N": n}
    return _per_vector_report("theorem7", lhs, rhs, xs, eps, {"f": f, "g": g, "s1": s1, "s2": s2}, values)


def check_theorem8(f, s1: float, g, s2: float, a, b, x, eps: float = EPS_REL, integral=None) -> InequalityReport:
    """``2^(s1+s2-1) <f(mid)x,x><g(mid)x,x> <= int + B(s1+1,s2+1) M + N/(s1+s2+1)``.

    The Beta coefficient multiplies ``M`` and ``1/(s1+s2+1)`` multiplies
    ``N``, the reverse of :func:`check_theorem7`.
    """
    xs = _vector_stack(x)
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    integral = paired_scalar_integral(f, g, a, b, xs) if integral is None else np.atleast_1d(integral)
    mid = 0.5 * (a + b)
    factor = 2.0 ** (s1 + s2 - 1.0)
    lhs = factor * quadratic_forms(apply_function(f, mid), xs) * quadratic_forms(apply_function(g, mid), xs)
    m, n = mn_values(f, g, a, b, xs)
    c_m = beta(s1 + 1.0, s2 + 1.0)
    c_n = 1.0 / (s1 + s2 + 1.0)
    rhs = integral + c_m * m + c_n * n
    values = {"coef_M": c_m, "coef_N": c_n, "midpoint_factor": factor,
              "integral": integral, "M": m, "N": n}
    return _per_vector_report("theorem8", lhs, rhs, xs, eps, {"f": f, "g": g, "s1": s1, "s2": s2}, values)


def check_lemma_positivity(f, s: float, a, tol: float | None = None) -> PsdVerdict:
    """Is ``f(A) >= 0``?  Only meaningful for ``0 < s < 1``.

    At ``s = 1`` the positivity argument collapses (the factor
    ``2^(1-s) - 1`` vanishes), so that case is rejected.
    """
    if s == 1.0:
        raise PreconditionError("positivity lemma is not supported at s = 1: 2^(1-s) - 1 = 0")
    if not 0.0 < s < 1.0:
        raise PreconditionError(f"positivity lemma needs 0 < s < 1, got {s}")
    return is_psd(apply_function(f, a), tol)


def _phi_values(f, a, b, xs):
    def phi(ts):
        ts = np.asarray(ts, dtype=float)
        uniq, inv = np.unique(ts, return_inverse=True)
        forms = quadratic_forms(apply_function_batch(f, segment_stack(a, b, uniq)), xs)
        return forms[inv.ravel()]

    return phi


def check_phi_equivalence(
    f,
    s: float,
    a,
    b,
    num_vectors: int = 8,
    grid_density: int = 21,
    rng=None,
    vectors=None,
    eps: float = 1e-9,
) -> InequalityReport:
    """Grid-test s-convexity of ``t -> <f((1-t)A + tB)x, x>`` for unit vectors ``x``.

    Vectors are the explicit ``vectors`` (if any) followed by
    ``num_vectors`` random ones.  One side per vector; its slack is minus the
    worst grid violation.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    dim = a.shape[0]
    rng = rng if rng is not None else rng_stream(0)
    vecs = [] if vectors is None else [np.asarray(v, dtype=complex) for v in _vector_stack(vectors)]
    vecs += [random_unit_vector(dim, rng) for _ in range(num_vectors)]
    if not vecs:
        raise InputError("no vectors to test")
    xs = np.array(vecs)
    xs = xs / np.linalg.norm(xs, axis=1, keepdims=True)
    phi = _phi_values(f, a, b, xs)
    pts = np.linspace(0.0, 1.0, grid_density)
    scale = max(1.0, float(np.abs(phi(pts)).max()))
    tol = eps * scale
    verdicts = grid_falsify(phi, s, pts, pts, "second", tol=tol)
    sides = [Side(f"x[{i}]", -v.max_violation, tol, scale) for i, v in enumerate(verdicts)]
    report = InequalityReport(
        "phi-equivalence",
        sides,
        inputs={"f": f, "s": s, "grid_density": grid_density},
        values={"verdicts": [v.describe() for v in verdicts], "vectors": list(xs)},
    )
    bad = [i for i, v in enumerate(verdicts) if not v.holds]
    if bad:
        i = max(bad, key=lambda j: verdicts[j].max_violation)
        x_, y_, w = verdicts[i].witness
        report.witness = {"side": sides[i].label, "min_eig": sides[i].slack, "x": xs[i],
                          "points": [x_, y_], "lambda": w}
    return report


def check_operator_s_convexity(f, s: float, a, b, lambdas=LAMBDA_GRID, eps: float = EPS_REL) -> InequalityReport:
    """``f((1-l)A + lB) <= (1-l)^s f(A) + l^s f(B)`` on a grid of weights ``l``."""
    if not 0.0 < s <= 1.0:
        raise InputError(f"s must lie in (0, 1], got {s}")
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    lambdas = np.asarray(lambdas, dtype=float)
    fa, fb = apply_function(f, a), apply_function(f, b)
    fmix = apply_function_batch(f, segment_stack(a, b, lambdas))
    sides, vecs = [], []
    for lam, fm in zip(lambdas, fmix):
        rhs = (1.0 - lam) ** s * fa + lam**s * fb
        side, vec = _matrix_side(f"lambda={lam:.2f}", fm, rhs, eps)
        sides.append(side)
        vecs.append(vec)
    report = InequalityReport("operator-convexity", sides, inputs={"f": f, "s": s})
    if not report.holds:
        i = min(range(len(sides)), key=lambda j: sides[j].normalized_slack)
        report.witness = {"side": sides[i].label, "min_eig": sides[i].slack,
                          "lambda": float(lambdas[i]), "x": vecs[i]}
    return report


def check_subadditivity(s: float, a, b, eps: float = EPS_REL) -> InequalityReport:
    """``(A + B)^s <= A^s + B^s`` for a pair with ``AB + BA >= 0``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    q = pair_qualifies(a, b)
    if not q:
        raise PreconditionError(f"pair does not satisfy AB + BA >= 0 (min eig {q.min_eigenvalue:.3e})")
    f = Power(s)
    lhs = apply_function(f, a + b)
    rhs = apply_function(f, a) + apply_function(f, b)
    side, vec = _matrix_side("subadditivity", lhs, rhs, eps)
    report = InequalityReport("subadditivity", [side], inputs={"s": s},
                              values={"sum_power": lhs, "power_sum": rhs})
    if not report.holds:
        report.witness = {"side": side.label, "min_eig": side.slack, "x": vec}
    return report


def reproduce_cubic_counterexample() -> InequalityReport:
    """Midpoint convexity slack of ``t^3`` on the fixed 2x2 pair."""
    a, b = CUBIC_A, CUBIC_B
    cube = Cubic()
    fa, fb = apply_function(cube, a), apply_function(cube, b)
    fmid = apply_function(cube, 0.5 * (a + b))
    slack = 0.5 * (fa + fb) - fmid
    expected = np.array([[67.0, -34.0], [-34.0, 17.0]]) / 8.0
    verdict = is_psd(slack)
    side = Side("midpoint", verdict.min_eigenvalue, verdict.tolerance_used,
                max(1.0, spectral_norm(fmid), spectral_norm(0.5 * (fa + fb))))
    return InequalityReport(
        "example-cubic",
        [side],
        witness={"side": "midpoint", "min_eig": verdict.min_eigenvalue, "lambda": 0.5,
                 "x": verdict.witness, "A": a, "B": b},
        inputs={"A": a, "B": b, "f": cube},
        values={
            "slack": slack,
            "expected": expected,
            "max_entry_error": float(np.abs(slack - expected).max()),
            "det_8_slack": float(np.linalg.det(8.0 * slack).real),
            "min_eig_8_slack": 8.0 * verdict.min_eigenvalue,
        },
    )


def cone_violation(a, vectors) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue of ``A xx* + xx* A`` over the given vectors.

    Rank-one ``B = xx*`` probes membership of ``A`` in the cone of PSD
    operators anticommuting positively with every PSD operator.  Returns the
    minimum and the ``x`` achieving it.
    """
    a = np.asarray(a, dtype=complex)
    best, arg = np.inf, None
    for x in _vector_stack(vectors):
        p = np.outer(x, x.conj())
        lam = np.linalg.eigvalsh(a @ p + p @ a)[0]
        if lam < best:
            best, arg = float(lam), x
    return best, arg


# -- trial suites ------------------------------------------------------------


@dataclass(frozen=True)
class RandomQuadratic:
    """Draws ``Quadratic(alpha, beta, gamma)`` per trial, ``alpha`` in ``[0, alpha_max]``."""

    alpha_max: float = 2.0
    coef_max: float = 2.0

    def draw(self, rng) -> Quadratic:
        return Quadratic(
            float(rng.uniform(0.0, self.alpha_max)),
            float(rng.uniform(-self.coef_max, self.coef_max)),
            float(rng.uniform(-self.coef_max, self.coef_max)),
        )

    def to_json(self):
        return {"kind": "random-quadratic", "params": {"alpha_max": self.alpha_max, "coef_max": self.coef_max}}


PAIR_SOURCES = ("qualified", "psd", "hermitian")


@dataclass
class TrialSuite:
    """Configuration of a seeded run; trial ``i`` draws from stream ``(seed, i)``."""

    theorem: str
    master_seed: int = 42
    trials: int = 100
    dim: int = 2
    pair_source: str | None = None
    f: ScalarFunction | RandomQuadratic | None = None
    g: ScalarFunction | None = None
    s: float | None = None
    s1: float | None = None
    s2: float | None = None
    eigenvalue_range: float = 4.0
    real: bool = False
    num_vectors: int = 8
    grid_density: int = 21
    eps_rel: float = EPS_REL
    extra_pairs: list = field(default_factory=list)
    threads: int = 1

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise InputError(f"unknown theorem {self.theorem!r}; expected one of {sorted(THEOREMS)}")
        if self.trials < 0 or (self.trials == 0 and not self.extra_pairs):
            raise InputError(f"trials must be >= 1, got {self.trials}")
        if self.dim < 1:
            raise InputError(f"dim must be >= 1, got {self.dim}")
        spec = THEOREMS[self.theorem]
        if self.pair_source is None:
            self.pair_source = spec.default_pairs
        if self.pair_source not in PAIR_SOURCES:
            raise InputError(f"pair source must be one of {PAIR_SOURCES}, got {self.pair_source!r}")
        spec.fill_defaults(self)

    def parameters(self) -> dict:
        return jsonable({
            "pair_source": self.pair_source,
            "f": self.f,
            "g": self.g,
            "s": self.s,
            "s1": self.s1,
            "s2": self.s2,
            "eigenvalue_range": self.eigenvalue_range,
            "real": self.real,
            "num_vectors": self.num_vectors,
            "eps_rel": self.eps_rel,
            "extra_pairs": len(self.extra_pairs),
        })

    def draw_pair(self, rng):
        hi = self.eigenvalue_range
        if self.pair_source == "qualified":
            return random_qualified_pair(self.dim, rng, (0.0, hi), self.real)
        lo = 0.0 if self.pair_source == "psd" else -hi
        return (random_hermitian(self.dim, (lo, hi), rng, self.real),
                random_hermitian(self.dim, (lo, hi), rng, self.real))


@dataclass
class SuiteResult:
    theorem: str
    seed: int
    trials: int
    dim: int
    min_slack: float
    tolerance: float
    failures: int
    witnesses: list
    parameters: dict
    reports: list

    @property
    def verdict(self) -> str:
        return "pass" if self.failures == 0 else "fail"

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "seed": self.seed,
            "trials": self.trials,
            "dim": self.dim,
            "min_slack": self.min_slack,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "witnesses": jsonable(self.witnesses),
            "failures": self.failures,
            "parameters": self.parameters,
        }

    def summary(self) -> str:
        word = "no counterexample found" if self.verdict == "pass" else f"{self.failures} failing trial(s)"
        return (f"{self.theorem}: {word} in {self.trials} trials (seed {self.seed}, dim {self.dim}); "
                f"min normalised slack {self.min_slack:.3e}, tolerance {self.tolerance:.1e}")


@dataclass(frozen=True)
class _TheoremSpec:
    default_pairs: str
    check: Callable
    fill_defaults: Callable


def _vectors(suite, rng):
    rand = [random_unit_vector(suite.dim, rng, suite.real) for _ in range(suite.num_vectors)]
    return np.array(rand + list(np.eye(suite.dim, dtype=complex)))


def _function(suite, rng):
    f = suite.f
    return f.draw(rng) if isinstance(f, RandomQuadratic) else f


def _run_t5(suite, a, b, rng):
    return check_theorem5(_function(suite, rng), a, b, suite.eps_rel)


def _run_t6(suite, a, b, rng):
    return check_theorem6(_function(suite, rng), suite.s, a, b, suite.eps_rel)


def _run_t7(suite, a, b, rng):
    return check_theorem7(suite.f, suite.s1, suite.g, suite.s2, a, b, _vectors(suite, rng), suite.eps_rel)


def _run_t8(suite, a, b, rng):
    return check_theorem8(suite.f, suite.s1, suite.g, suite.s2, a, b, _vectors(suite, rng), suite.eps_rel)


def _run_subadd(suite, a, b, rng):
    return check_subadditivity(suite.s, a, b, suite.eps_rel)


def _run_convexity(suite, a, b, rng):
    return check_operator_s_convexity(_function(suite, rng), suite.s, a, b, eps=suite.eps_rel)


def _run_positivity(suite, a, b, rng):
    f = _function(suite, rng)
    sides = []
    for name, m in (("A", a), ("B", b)):
        v = check_lemma_positivity(f, suite.s, m, loewner_tolerance(m, eps_rel=suite.eps_rel))
        sides.append((name, v))
    report = InequalityReport(
        "lemma-positivity",
        [Side(f"f({n}) >= 0", v.min_eigenvalue, v.tolerance_used) for n, v in sides],
        inputs={"f": f, "s": suite.s},
    )
    bad = [(n, v) for n, v in sides if not v.is_psd]
    if bad:
        n, v = bad[0]
        report.witness = {"side": f"f({n}) >= 0", "min_eig": v.min_eigenvalue, "x": v.witness}
    return report


def _run_phi(suite, a, b, rng):
    return check_phi_equivalence(_function(suite, rng), suite.s, a, b, suite.num_vectors,
                                 suite.grid_density, rng)


def _defaults(f=None, g=None, s=None, s1=None, s2=None):
    def fill(suite):
        if suite.s is None:
            suite.s = s
        if suite.s1 is None:
            suite.s1 = s1
        if suite.s2 is None:
            suite.s2 = s2
        if suite.f is None:
            suite.f = f(suite) if callable(f) else f
        if suite.g is None:
            suite.g = g(suite) if callable(g) else g
        for name in ("s", "s1", "s2"):
            v = getattr(suite, name)
            if v is not None and not 0.0 < v <= 1.0:
                raise InputError(f"--{name} must lie in (0, 1], got {v}")
        if suite.f is None:
            raise InputError(f"{suite.theorem} needs a function f")

    return fill


THEOREMS = {
    "theorem5": _TheoremSpec("hermitian", _run_t5, _defaults(f=RandomQuadratic())),
    "theorem6": _TheoremSpec("qualified", _run_t6, _defaults(f=lambda st: Power(st.s), s=0.5)),
    "theorem7": _TheoremSpec("qualified", _run_t7, _defaults(
        f=lambda st: Power(st.s1), g=lambda st: Power(st.s2), s1=0.5, s2=0.5)),
    "theorem8": _TheoremSpec("qualified", _run_t8, _defaults(
        f=lambda st: Power(st.s1), g=lambda st: Power(st.s2), s1=0.5, s2=0.5)),
    "subadditivity": _TheoremSpec("qualified", _run_subadd, _defaults(f=lambda st: Power(st.s), s=0.5)),
    "operator-convexity": _TheoremSpec("psd", _run_convexity, _defaults(s=1.0)),
    "lemma-positivity": _TheoremSpec("qualified", _run_positivity, _defaults(f=lambda st: Power(st.s), s=0.5)),
    "phi-equivalence": _TheoremSpec("qualified", _run_phi, _defaults(f=lambda st: Power(st.s), s=0.5)),
}
THEOREMS["theorem4"] = THEOREMS["subadditivity"]
THEOREMS["lemma2"] = THEOREMS["phi-equivalence"]
THEOREMS["lemma1"] = THEOREMS["lemma-positivity"]


def _trial(suite: TrialSuite, index: int):
    rng = rng_stream(suite.master_seed, index)
    if index < suite.trials:
        a, b = suite.draw_pair(rng)
    else:
        a, b = (np.asarray(m, dtype=complex) for m in suite.extra_pairs[index - suite.trials])
        if suite.pair_source == "qualified":
            try:
                ok = pair_qualifies(a, b)
            except PreconditionError as exc:
                raise GenerationError(f"extra pair {index - suite.trials}: {exc}") from exc
            if not ok:
                raise GenerationError(
                    f"extra pair {index - suite.trials} fails AB + BA >= 0 under a qualified-only hypothesis"
                )
    report = THEOREMS[suite.theorem].check(suite, a, b, rng)
    return a, b, report


def run_suite(suite: TrialSuite, keep_reports: bool = False) -> SuiteResult:
    """Run every trial of ``suite``; the result does not depend on ``threads``."""
    indices = range(suite.trials + len(suite.extra_pairs))
    if suite.threads > 1:
        with ThreadPoolExecutor(max_workers=suite.threads) as pool:
            outcomes = list(pool.map(lambda i: _trial(suite, i), indices))
    else:
        outcomes = [_trial(suite, i) for i in indices]
    min_slack = float("inf")
    failures = 0
    witnesses = []
    for i, (a, b, report) in zip(indices, outcomes):
        min_slack = min(min_slack, report.min_normalized_slack)
        if not report.holds:
            failures += 1
            w = report.witness or {}
            witnesses.append({
                "trial": i,
                "side": w.get("side"),
                "lambda": w.get("lambda"),
                "min_eig": w.get("min_eig", report.min_slack),
                "A": a,
                "B": b,
                "x": w.get("x"),
            })
    return SuiteResult(
        theorem=suite.theorem,
        seed=suite.master_seed,
        trials=len(indices),
        dim=suite.dim,
        min_slack=min_slack,
        tolerance=suite.eps_rel,
        failures=failures,
        witnesses=witnesses,
        parameters=suite.parameters(),
        reports=[r for _, _, r in outcomes] if keep_reports else [],
    )


def certify_operator_s_convexity(f, s: float, suite: TrialSuite) -> SuiteResult:
    """Sample the defining inequality of operator s-convexity over ``suite``'s pairs."""
    suite = TrialSuite(
        "operator-convexity", suite.master_seed, suite.trials, suite.dim, suite.pair_source,
        f=f, s=s, eigenvalue_range=suite.eigenvalue_range, real=suite.real,
        eps_rel=suite.eps_rel, extra_pairs=list(suite.extra_pairs), threads=suite.threads,
    )
    return run_suite(suite)
