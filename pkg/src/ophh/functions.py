"""Registry of scalar functions used throughout the package.

Every function is a small frozen dataclass that evaluates vectorised over
numpy arrays and knows its own domain.  Only the enumerated kinds below can
be loaded from JSON; arbitrary callables are accepted by the numerical
routines but cannot be serialised.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .errors import DomainError, InputError

__all__ = [
    "ScalarFunction",
    "Power",
    "Quadratic",
    "Cubic",
    "ExampleFamily",
    "Affine",
    "evaluate",
    "domain_lower",
    "function_from_json",
    "function_to_json",
    "load_function",
    "parse_function",
]


class ScalarFunction:
    """Common behaviour of the registry functions."""

    kind: str = ""
    lower: float = -math.inf

    def __call__(self, t):
        raise NotImplementedError

    @property
    def params(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}

    def label(self) -> str:
        args = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.kind}({args})"


@dataclass(frozen=True)
class Power(ScalarFunction):
    """``t ** s`` on ``[0, inf)`` with ``0 < s <= 1``; ``0 ** s == 0``."""

    s: float
    kind = "power"
    lower = 0.0

    def __post_init__(self):
        if not 0.0 < self.s <= 1.0:
            raise InputError(f"power exponent must lie in (0, 1], got {self.s}")

    def __call__(self, t):
        return np.power(t, self.s)


@dataclass(frozen=True)
class Quadratic(ScalarFunction):
    """``alpha t^2 + beta t + gamma`` on the whole real line."""

    alpha: float
    beta: float
    gamma: float
    kind = "quadratic"

    def __post_init__(self):
        if self.alpha < 0:
            raise InputError(f"quadratic requires alpha >= 0, got {self.alpha}")

    def __call__(self, t):
        t = np.asarray(t)
        return (self.alpha * t + self.beta) * t + self.gamma


@dataclass(frozen=True)
class Cubic(ScalarFunction):
    """``t ** 3`` restricted to ``[0, inf)``."""

    kind = "cubic"
    lower = 0.0

    def __call__(self, t):
        t = np.asarray(t)
        return t * t * t


@dataclass(frozen=True)
class ExampleFamily(ScalarFunction):
    """Piecewise ``f(0) = a`` and ``f(t) = b t^s + c`` for ``t > 0``."""

    a: float
    b: float
    c: float
    s: float
    kind = "example1"
    lower = 0.0

    def __post_init__(self):
        if not 0.0 < self.s < 1.0:
            raise InputError(f"example1 exponent must lie in (0, 1), got {self.s}")

    def __call__(self, t):
        t = np.asarray(t)
        return np.where(t == 0, self.a, self.b * np.power(t, self.s) + self.c)


@dataclass(frozen=True)
class Affine(ScalarFunction):
    """``m t + k`` on the whole real line."""

    m: float
    k: float
    kind = "affine"

    def __call__(self, t):
        t = np.asarray(t)
        return self.m * t + self.k


_KINDS = {cls.kind: cls for cls in (Power, Quadratic, Cubic, ExampleFamily, Affine)}


def domain_lower(f) -> float:
    """Left end of the domain of ``f``; arbitrary callables default to -inf."""
    return getattr(f, "lower", -math.inf)


def evaluate(f, t):
    """Evaluate ``f`` at ``t`` after checking the domain."""
    arr = np.asarray(t, dtype=float)
    lo = domain_lower(f)
    if np.any(arr < lo):
        bad = float(arr[arr < lo].min()) if arr.ndim else float(arr)
        raise DomainError(f"{_name(f)} is undefined at t={bad!r} (domain starts at {lo})")
    out = f(arr)
    return float(out) if np.ndim(out) == 0 else out


def _name(f) -> str:
    return f.label() if isinstance(f, ScalarFunction) else getattr(f, "__name__", repr(f))


def function_to_json(f: ScalarFunction) -> dict:
    if not isinstance(f, ScalarFunction):
        raise InputError(f"only registry functions can be serialised, got {f!r}")
    return f.to_json()


def function_from_json(obj: dict) -> ScalarFunction:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("function JSON must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind not in _KINDS:
        raise InputError(f"unknown function kind {kind!r}; expected one of {sorted(_KINDS)}")
    params = obj.get("params", {})
    if not isinstance(params, dict):
        raise InputError("function JSON field 'params' must be an object")
    cls = _KINDS[kind]
    expected = {f.name for f in fields(cls)}
    if set(params) != expected:
        raise InputError(
            f"{kind} expects params {sorted(expected)}, got {sorted(params)}"
        )
    try:
        return cls(**{k: float(v) for k, v in params.items()})
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad params for {kind}: {exc}") from exc


def load_function(path) -> ScalarFunction:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: cannot read function JSON ({exc})") from exc
    try:
        return function_from_json(obj)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def parse_function(text: str, s: float | None = None) -> ScalarFunction:
    """Parse a command-line function spec.

    Accepted forms: ``power`` (exponent from ``s``), ``power:0.5``, ``cubic``,
    ``identity``, ``constant``, ``quadratic[:alpha,beta,gamma]``,
    ``affine[:m,k]``, ``example1:a,b,c,s``, or a path to a function JSON file.
    """
    if text.endswith(".json") or Path(text).is_file():
        return load_function(text)
    name, _, rest = text.partition(":")
    try:
        args = [float(v) for v in rest.split(",")] if rest else []
    except ValueError as exc:
        raise InputError(f"bad numeric argument in function spec {text!r}") from exc
    name = name.lower()
    if name == "power":
        exp = args[0] if args else s
        if exp is None:
            raise InputError("power needs an exponent (power:<s> or --s)")
        return Power(exp)
    if name == "cubic":
        return Cubic()
    if name == "identity":
        return Affine(1.0, 0.0)
    if name == "constant":
        return Quadratic(0.0, 0.0, args[0] if args else 1.0)
    if name == "quadratic":
        a, b, c = (args + [1.0, 0.0, 0.0][len(args):])[:3]
        return Quadratic(a, b, c)
    if name == "affine":
        m, k = (args + [1.0, 0.0][len(args):])[:2]
        return Affine(m, k)
    if name == "example1":
        if len(args) != 4:
            raise InputError("example1 needs a,b,c,s")
        return ExampleFamily(*args)
    raise InputError(f"unknown function {text!r}")
