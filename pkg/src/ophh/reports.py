"""Result containers shared by the scalar and operator checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .matrices import matrix_to_json, vector_to_json

__all__ = ["Side", "InequalityReport", "jsonable"]


@dataclass(frozen=True)
class Side:
    """One inequality ``lhs <= rhs``; ``slack`` is min eig (or value) of rhs - lhs."""

    label: str
    slack: float
    tolerance: float
    scale: float = 1.0

    @property
    def holds(self) -> bool:
        return self.slack >= -self.tolerance

    @property
    def normalized_slack(self) -> float:
        return self.slack / self.scale


@dataclass
class InequalityReport:
    name: str
    sides: list[Side] = field(default_factory=list)
    witness: dict | None = None
    inputs: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    skipped: str | None = None

    @property
    def holds(self) -> bool:
        return self.skipped is None and all(s.holds for s in self.sides)

    @property
    def verdict(self) -> str:
        if self.skipped is not None:
            return "vacuous"
        return "pass" if self.holds else "fail"

    @property
    def min_slack(self) -> float:
        return min((s.slack for s in self.sides), default=float("inf"))

    @property
    def min_normalized_slack(self) -> float:
        return min((s.normalized_slack for s in self.sides), default=float("inf"))

    def worst_side(self) -> Side | None:
        return min(self.sides, key=lambda s: s.normalized_slack, default=None)

    def side(self, label: str) -> Side:
        for s in self.sides:
            if s.label == label:
                return s
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "skipped": self.skipped,
            "sides": [
                {"label": s.label, "slack": s.slack, "tolerance": s.tolerance,
                 "scale": s.scale, "holds": s.holds}
                for s in self.sides
            ],
            "values": jsonable(self.values),
            "inputs": jsonable(self.inputs),
            "witness": jsonable(self.witness),
        }


def jsonable(obj: Any) -> Any:
    """Convert numpy payloads to the package's JSON encodings."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2 and obj.shape[0] == obj.shape[1]:
            return matrix_to_json(obj)
        if obj.ndim == 1 and np.iscomplexobj(obj):
            return vector_to_json(obj)
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj
