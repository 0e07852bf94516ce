"""Streaming variance-threshold feature selection.

Single-pass (Welford) estimates of population variance per scalar feature;
a feature survives when its variance is strictly greater than the threshold,
so at the default threshold of 0 exact constants are dropped.  Word-gram
columns never pass through here: they feed the drift detector and the
learner directly.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


@dataclass
class _Welford:
    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def add(self, value: float) -> None:
        self.count += 1
        delta = value - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (value - self.mean)

    @property
    def variance(self) -> float:
        return self.m2 / self.count if self.count else 0.0


@dataclass
class RunningVariance:
    stats: dict[str, _Welford] = field(default_factory=dict)

    def observe(self, fv: dict[str, float]) -> None:
        for key, value in fv.items():
            if math.isnan(value):
                logger.warning("NaN value for feature %s skipped", key)
                continue
            self.stats.setdefault(key, _Welford()).add(value)

    def variance(self, key: str) -> float:
        return self.stats[key].variance if key in self.stats else 0.0

    def selected(self, threshold: float) -> set[str]:
        return {k for k, w in self.stats.items() if w.variance > threshold}


class VarianceSelector:
    """Caches the selected set; the pipeline refreshes it periodically and on drift."""

    def __init__(self, threshold: float = 0.0, period: int = 500):
        self.threshold = threshold
        self.period = period
        self.rv = RunningVariance()
        self._selected: set[str] | None = None
        self._observed = 0
        self.snapshots: list[dict] = []

    def observe(self, fv: dict[str, float]) -> None:
        self.rv.observe(fv)
        self._observed += 1
        if self._selected is None or (self.period and self._observed % self.period == 0):
            self.refresh()

    def refresh(self) -> set[str]:
        self._selected = self.rv.selected(self.threshold)
        self.snapshots.append(
            {"sample_index": self._observed, "selected": sorted(self._selected)}
        )
        return self._selected

    @property
    def selected(self) -> set[str]:
        if self._selected is None:
            self.refresh()
        return self._selected

    def snapshot_jsonl(self) -> str:
        return "\n".join(json.dumps(s, sort_keys=True) for s in self.snapshots)
