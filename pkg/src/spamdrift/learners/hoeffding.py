"""Incremental Hoeffding decision tree over sparse numeric feature dicts.

Leaves keep per-class Gaussian summaries for every feature they observe.
Split evaluation scans 10 evenly spaced candidate thresholds per feature,
scores them by information gain, and splits when the best feature beats the
second best by more than the Hoeffding radius (or the radius has shrunk
under the tie threshold).  Features missing from a sample read as 0, which
is what makes sparse word-gram columns behave: the unobserved mass of a
class sits at zero and is accounted for explicitly when a candidate
threshold partitions the data.

Leaf prediction is either the Laplace-smoothed majority class ("mc") or
adaptive naive Bayes ("nba"): the leaf tracks which of the two predictors
has been right more often on the samples it has seen and answers with the
current winner.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from ..config import ModelConfig
from .base import DEFAULT_CLASSES, Prediction, argmax_label, hoeffding_bound, laplace_proba

logger = logging.getLogger(__name__)

SPLIT_CANDIDATES = 10
_SQRT2 = math.sqrt(2.0)
_MIN_SIGMA = 1e-6
_LOG_MISSING = math.log(1e-12)   # naive Bayes penalty for a class that never saw a feature


class _GaussianStat:
    __slots__ = ("n", "mean", "m2", "lo", "hi")

    def __init__(self) -> None:
        self.n = 0.0
        self.mean = 0.0
        self.m2 = 0.0
        self.lo = math.inf
        self.hi = -math.inf

    def update(self, value: float, weight: float = 1.0) -> None:
        self.n += weight
        delta = value - self.mean
        self.mean += delta * weight / self.n
        self.m2 += weight * delta * (value - self.mean)
        if value < self.lo:
            self.lo = value
        if value > self.hi:
            self.hi = value

    @property
    def sigma(self) -> float:
        if self.n <= 0:
            return _MIN_SIGMA
        # weighted updates can leave m2 a hair below zero
        return max(math.sqrt(max(self.m2, 0.0) / self.n), _MIN_SIGMA)

    def cdf(self, x: float) -> float:
        if self.m2 <= 0.0:
            return 1.0 if x >= self.mean else 0.0
        return 0.5 * (1.0 + math.erf((x - self.mean) / (self.sigma * _SQRT2)))

    def log_pdf(self, x: float) -> float:
        s = self.sigma
        z = (x - self.mean) / s
        return -0.5 * z * z - math.log(s * math.sqrt(2.0 * math.pi))


class _Leaf:
    __slots__ = (
        "node_id", "class_counts", "total", "stats",
        "last_attempt_total", "mc_correct", "nb_correct",
    )

    def __init__(self, node_id: int):
        self.node_id = node_id
        self.class_counts: dict[str, float] = {}
        self.total = 0.0
        self.stats: dict[str, dict[str, _GaussianStat]] = {}
        self.last_attempt_total = 0.0
        self.mc_correct = 0.0
        self.nb_correct = 0.0

    def observe(self, fv: dict[str, float], label: str, weight: float) -> None:
        self.class_counts[label] = self.class_counts.get(label, 0.0) + weight
        self.total += weight
        for key, value in fv.items():
            per_class = self.stats.setdefault(key, {})
            stat = per_class.get(label)
            if stat is None:
                stat = per_class[label] = _GaussianStat()
            stat.update(value, weight)


class _Split:
    __slots__ = ("node_id", "feature", "threshold", "left", "right", "monitor", "alternate", "alt_stats")

    def __init__(self, node_id: int, feature: str, threshold: float, left, right):
        self.node_id = node_id
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.monitor = None        # used by the adaptive variant
        self.alternate = None
        self.alt_stats = None

    def route(self, fv: dict[str, float]):
        return self.right if fv.get(self.feature, 0.0) > self.threshold else self.left


def _entropy(counts: dict[str, float]) -> float:
    total = sum(counts.values())
    if total <= 0:
        return 0.0
    h = 0.0
    for c in counts.values():
        if c > 0:
            p = c / total
            h -= p * math.log2(p)
    return h


class HoeffdingTreeClassifier:
    """HTC: the base online decision tree; learn_one / predict_proba_one."""

    kind = "htc"

    def __init__(
        self,
        config: ModelConfig | None = None,
        classes: tuple[str, ...] = DEFAULT_CLASSES,
        allowed_features: set[str] | None = None,
    ):
        self.config = config or ModelConfig()
        self.classes = classes
        self.allowed_features = allowed_features
        self._warned_unknown: set[str] = set()
        self._next_id = 0
        self.root = self._new_leaf()
        self.n_splits = 0

    # -- structure ----------------------------------------------------------

    def _alloc_id(self) -> int:
        nid = self._next_id
        self._next_id += 1
        return nid

    def _new_leaf(self) -> _Leaf:
        return _Leaf(self._alloc_id())

    def _leaf_for(self, fv: dict[str, float]) -> _Leaf:
        node = self.root
        while isinstance(node, _Split):
            node = node.route(fv)
        return node

    def _path_to_leaf(self, fv: dict[str, float]) -> tuple[list, _Leaf]:
        path = []
        node = self.root
        while isinstance(node, _Split):
            path.append(node)
            node = node.route(fv)
        return path, node

    # -- learning -----------------------------------------------------------

    def _filter(self, fv: dict[str, float]) -> dict[str, float]:
        if self.allowed_features is None:
            return fv
        unknown = fv.keys() - self.allowed_features
        for key in unknown - self._warned_unknown:
            logger.warning("unknown feature key %r ignored", key)
            self._warned_unknown.add(key)
        return {k: v for k, v in fv.items() if k in self.allowed_features}

    def learn_one(self, fv: dict[str, float], label: str, weight: float = 1.0) -> None:
        fv = self._filter(fv)
        leaf = self._leaf_for(fv)
        self._learn_at_leaf(leaf, fv, label, weight)

    def _learn_at_leaf(self, leaf: _Leaf, fv: dict[str, float], label: str, weight: float) -> None:
        if self.config.leaf_prediction == "nba":
            mc = self._majority_label(leaf)
            nb = argmax_label(self._naive_bayes_proba(leaf, fv), self.classes)
            if mc == label:
                leaf.mc_correct += weight
            if nb == label:
                leaf.nb_correct += weight
        leaf.observe(fv, label, weight)
        if leaf.total - leaf.last_attempt_total >= self.config.grace_period:
            self._attempt_split(leaf)

    def _attempt_split(self, leaf: _Leaf) -> None:
        leaf.last_attempt_total = leaf.total
        if len([c for c in leaf.class_counts.values() if c > 0]) < 2:
            return
        best: tuple[float, str, float] | None = None
        second_gain = 0.0                      # the null split is always a candidate
        base_entropy = _entropy(leaf.class_counts)
        for feature in sorted(leaf.stats):
            cand = self._best_threshold(leaf, feature, base_entropy)
            if cand is None:
                continue
            gain, threshold = cand
            if best is None or gain > best[0]:
                if best is not None:
                    second_gain = max(second_gain, best[0])
                best = (gain, feature, threshold)
            else:
                second_gain = max(second_gain, gain)
        if best is None or best[0] <= 0.0:
            return
        epsilon = hoeffding_bound(
            math.log2(len(self.classes)), self.config.split_confidence, int(leaf.total)
        )
        if best[0] - second_gain > epsilon or epsilon < self.config.tie_threshold:
            self._split_leaf(leaf, best[1], best[2])

    def _best_threshold(self, leaf: _Leaf, feature: str, base_entropy: float):
        per_class = leaf.stats[feature]
        lo = min(s.lo for s in per_class.values())
        hi = max(s.hi for s in per_class.values())
        # Classes (or part of a class) that never exhibited the feature sit at 0.
        missing = {
            c: leaf.class_counts.get(c, 0.0) - (per_class[c].n if c in per_class else 0.0)
            for c in leaf.class_counts
        }
        if any(m > 0 for m in missing.values()):
            lo = min(lo, 0.0)
            hi = max(hi, 0.0)
        if not hi > lo:
            return None
        best_gain, best_t = 0.0, None
        total = leaf.total
        step = (hi - lo) / (SPLIT_CANDIDATES + 1)
        for i in range(1, SPLIT_CANDIDATES + 1):
            t = lo + step * i
            left: dict[str, float] = {}
            right: dict[str, float] = {}
            for c, count in leaf.class_counts.items():
                stat = per_class.get(c)
                observed_left = stat.n * stat.cdf(t) if stat else 0.0
                miss_left = missing[c] if t >= 0.0 else 0.0
                l = observed_left + miss_left
                left[c] = l
                right[c] = count - l
            nl, nr = sum(left.values()), sum(right.values())
            if nl <= 0 or nr <= 0:
                continue
            gain = base_entropy - (nl / total) * _entropy(left) - (nr / total) * _entropy(right)
            if gain > best_gain:
                best_gain, best_t = gain, t
        if best_t is None:
            return None
        return best_gain, best_t

    def _split_leaf(self, leaf: _Leaf, feature: str, threshold: float) -> None:
        split = _Split(leaf.node_id, feature, threshold, self._new_leaf(), self._new_leaf())
        self._replace_node(leaf, split)
        self.n_splits += 1

    def _replace_node(self, old, new) -> None:
        if self.root is old:
            self.root = new
            return
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, _Split):
                if node.left is old:
                    node.left = new
                    return
                if node.right is old:
                    node.right = new
                    return
                stack.append(node.left)
                stack.append(node.right)
        raise RuntimeError("node to replace not found")

    # -- prediction ----------------------------------------------------------

    def _majority_label(self, leaf: _Leaf) -> str:
        return argmax_label(leaf.class_counts, self.classes)

    def _naive_bayes_proba(self, leaf: _Leaf, fv: dict[str, float]) -> dict[str, float]:
        log_scores = {
            c: math.log((leaf.class_counts.get(c, 0.0) + 1.0) / (leaf.total + len(self.classes)))
            for c in self.classes
        }
        for key, value in fv.items():
            per_class = leaf.stats.get(key)
            if not per_class:
                continue
            for c in self.classes:
                stat = per_class.get(c)
                if stat is not None and stat.n > 0:
                    log_scores[c] += stat.log_pdf(value)
                else:
                    log_scores[c] += _LOG_MISSING
        peak = max(log_scores.values())
        raw = {c: math.exp(s - peak) for c, s in log_scores.items()}
        z = sum(raw.values())
        return {c: r / z for c, r in raw.items()}

    def predict_proba_one(self, fv: dict[str, float]) -> Prediction:
        fv = self._filter(fv)
        leaf = self._leaf_for(fv)
        if self.config.leaf_prediction == "nba" and leaf.nb_correct > leaf.mc_correct and leaf.stats:
            proba = self._naive_bayes_proba(leaf, fv)
        else:
            proba = laplace_proba(leaf.class_counts, self.classes)
        return Prediction(label=argmax_label(proba, self.classes), proba=proba)

    # -- export ---------------------------------------------------------------

    def export_trees(self) -> list[dict]:
        return [self._export_tree(self.root)]

    def _export_tree(self, root) -> dict:
        nodes = []
        stack = [root]
        while stack:
            node = stack.pop()
            if isinstance(node, _Split):
                nodes.append(
                    {
                        "id": node.node_id,
                        "kind": "split",
                        "feature": node.feature,
                        "threshold": node.threshold,
                        "left": node.left.node_id,
                        "right": node.right.node_id,
                    }
                )
                stack.append(node.right)
                stack.append(node.left)
            else:
                nodes.append(
                    {
                        "id": node.node_id,
                        "kind": "leaf",
                        "counts": {c: node.class_counts.get(c, 0.0) for c in self.classes},
                    }
                )
        nodes.sort(key=lambda n: n["id"])
        return {"root": root.node_id, "nodes": nodes}
