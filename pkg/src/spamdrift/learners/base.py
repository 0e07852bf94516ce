"""Shared pieces of the online tree classifiers."""

from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_CLASSES = ("nonspam", "spam")


def hoeffding_bound(value_range: float, delta: float, n: int) -> float:
    """Confidence radius sqrt(R^2 * ln(1/delta) / (2n))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < delta <= 1:
        raise ValueError("delta must be in (0, 1]")
    return math.sqrt(value_range * value_range * math.log(1.0 / delta) / (2.0 * n))


@dataclass(frozen=True)
class Prediction:
    label: str
    proba: dict[str, float]

    @property
    def confidence(self) -> float:
        return self.proba[self.label]


def argmax_label(proba: dict[str, float], class_order: tuple[str, ...]) -> str:
    """Highest-probability class; ties resolve to the earliest in class order."""
    best = class_order[0]
    for c in class_order:
        if proba.get(c, 0.0) > proba.get(best, 0.0):
            best = c
    return best


def laplace_proba(counts: dict[str, float], class_order: tuple[str, ...], alpha: float = 1.0) -> dict[str, float]:
    total = sum(counts.get(c, 0.0) for c in class_order)
    denom = total + alpha * len(class_order)
    return {c: (counts.get(c, 0.0) + alpha) / denom for c in class_order}


class ExportedTree:
    """Read-only view over one exported tree structure.

    The node list uses the documented JSON schema: split nodes carry
    ``feature``/``threshold``/``left``/``right``, leaves carry ``counts``.
    A sample goes right when ``value > threshold`` (missing features read
    as 0).
    """

    def __init__(self, tree: dict):
        self.root_id = tree["root"]
        self.nodes = {n["id"]: n for n in tree["nodes"]}

    def leaf_for(self, fv: dict[str, float]) -> dict:
        node = self.nodes[self.root_id]
        while node["kind"] == "split":
            value = fv.get(node["feature"], 0.0)
            node = self.nodes[node["right"] if value > node["threshold"] else node["left"]]
        return node

    def predict_proba(self, fv: dict[str, float], class_order: tuple[str, ...] = DEFAULT_CLASSES) -> dict[str, float]:
        return laplace_proba(self.leaf_for(fv)["counts"], class_order)
