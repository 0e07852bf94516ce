"""Adaptive random forest of Hoeffding trees.

Diversity comes from two sources: each member trains on a Poisson-weighted
copy of the sample (online bagging, rate 6 by default), and each member only
sees a deterministic pseudo-random subset of the feature keys (a stable hash
of (seed, member, key) against ``feature_fraction``).  Every member carries
ADWIN warning and drift monitors on its own prequential error: a warning
starts a background tree trained in parallel, a drift promotes the
background tree (or resets the member).  The ensemble label is the majority
vote of member labels; probabilities are the average of member
distributions.
"""

from __future__ import annotations

import hashlib
import math
import random

from ..config import ModelConfig
from ..drift import ADWIN
from .base import DEFAULT_CLASSES, Prediction, argmax_label
from .hoeffding import HoeffdingTreeClassifier


def _poisson(rate: float, rng: random.Random) -> int:
    limit = math.exp(-rate)
    k = 0
    p = 1.0
    while True:
        p *= rng.random()
        if p <= limit:
            return k
        k += 1


class _Member:
    def __init__(self, forest: "AdaptiveRandomForestClassifier", index: int):
        self.forest = forest
        self.index = index
        self.rng = random.Random(forest.seed * 1_000_003 + index)
        self.tree = HoeffdingTreeClassifier(forest.config, forest.classes)
        cfg = forest.config
        self.warning = ADWIN(cfg.warning_delta) if cfg.warning_delta else None
        self.drift = ADWIN(cfg.drift_delta) if cfg.drift_delta else None
        self.background: HoeffdingTreeClassifier | None = None

    def _includes(self, key: str) -> bool:
        h = hashlib.blake2b(
            f"{self.forest.seed}:{self.index}:{key}".encode(), digest_size=8
        ).digest()
        return int.from_bytes(h, "big") / 2**64 < self.forest.config.feature_fraction

    def project(self, fv: dict[str, float]) -> dict[str, float]:
        if self.forest.config.feature_fraction >= 1.0:
            return fv
        sub = {k: v for k, v in fv.items() if self._includes(k)}
        return sub if sub else fv   # never leave a member feature-blind

    def learn(self, fv: dict[str, float], label: str) -> None:
        sub = self.project(fv)
        error = self.tree.predict_proba_one(sub).label != label

        signal = 0.0 if error else 1.0
        if self.warning is not None:
            if self.warning.observe(signal) and self.background is None:
                self.background = HoeffdingTreeClassifier(self.forest.config, self.forest.classes)
        if self.drift is not None and self.drift.observe(signal):
            self.tree = self.background or HoeffdingTreeClassifier(
                self.forest.config, self.forest.classes
            )
            self.background = None
            self.warning = ADWIN(self.forest.config.warning_delta)
            self.drift = ADWIN(self.forest.config.drift_delta)

        rate = self.forest.config.poisson_rate
        weight = _poisson(rate, self.rng) if rate else 1
        if weight > 0:
            self.tree.learn_one(sub, label, float(weight))
            if self.background is not None:
                self.background.learn_one(sub, label, float(weight))


class AdaptiveRandomForestClassifier:
    kind = "arfc"

    def __init__(
        self,
        config: ModelConfig | None = None,
        classes: tuple[str, ...] = DEFAULT_CLASSES,
        seed: int = 42,
    ):
        self.config = config or ModelConfig(kind="arfc")
        self.classes = classes
        self.seed = seed
        self.members = [_Member(self, i) for i in range(self.config.n_trees)]

    def learn_one(self, fv: dict[str, float], label: str, weight: float = 1.0) -> None:
        for member in self.members:
            member.learn(fv, label)

    def predict_proba_one(self, fv: dict[str, float]) -> Prediction:
        votes: dict[str, int] = {c: 0 for c in self.classes}
        acc = {c: 0.0 for c in self.classes}
        for member in self.members:
            pred = member.tree.predict_proba_one(member.project(fv))
            votes[pred.label] += 1
            for c in self.classes:
                acc[c] += pred.proba[c]
        proba = {c: acc[c] / len(self.members) for c in self.classes}
        label = argmax_label({c: float(v) for c, v in votes.items()}, self.classes)
        return Prediction(label=label, proba=proba)

    def export_trees(self) -> list[dict]:
        return [m.tree._export_tree(m.tree.root) for m in self.members]
