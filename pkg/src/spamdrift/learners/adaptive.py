"""Hoeffding adaptive tree: HTC plus per-branch error monitoring.

Every internal node watches the tree's prediction error on the samples
routed through it with an ADWIN monitor.  When the monitor flags a change,
the node grows an alternate subtree that trains in parallel on the same
routed samples.  Once the alternate has seen ``swap_grace`` samples it
replaces the main branch if its prequential error is strictly lower; an
alternate doing clearly worse (0.05 above the main error) is discarded.
Only the main tree is visible to prediction and export.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..config import ModelConfig
from ..drift import ADWIN
from .base import DEFAULT_CLASSES
from .hoeffding import HoeffdingTreeClassifier, _Split


@dataclass
class _AltStats:
    seen: int = 0
    alt_errors: int = 0
    main_errors: int = 0


class _Subtree(HoeffdingTreeClassifier):
    """Alternate branch sharing the owner's node-id space."""

    def __init__(self, owner: "HoeffdingAdaptiveTreeClassifier"):
        self._owner = owner
        super().__init__(owner.config, owner.classes, owner.allowed_features)

    def _alloc_id(self) -> int:
        return self._owner._alloc_id()


class HoeffdingAdaptiveTreeClassifier(HoeffdingTreeClassifier):
    kind = "hatc"

    def __init__(
        self,
        config: ModelConfig | None = None,
        classes: tuple[str, ...] = DEFAULT_CLASSES,
        allowed_features: set[str] | None = None,
    ):
        super().__init__(config, classes, allowed_features)
        self.n_swaps = 0

    def learn_one(self, fv: dict[str, float], label: str, weight: float = 1.0) -> None:
        fv = self._filter(fv)
        predicted = super().predict_proba_one(fv).label
        error = predicted != label

        path, leaf = self._path_to_leaf(fv)
        for node in path:
            if node.monitor is None:
                node.monitor = ADWIN(self.config.adaptive_delta)
            change = node.monitor.observe(0.0 if error else 1.0)
            if change and node.alternate is None:
                node.alternate = _Subtree(self)
                node.alt_stats = _AltStats()
        self._learn_at_leaf(leaf, fv, label, weight)

        # Alternates learn on the same routed samples and compete on error.
        for node in path:
            alt = node.alternate
            if alt is None:
                continue
            stats: _AltStats = node.alt_stats
            alt_pred = alt.predict_proba_one(fv).label
            stats.seen += 1
            stats.alt_errors += alt_pred != label
            stats.main_errors += error
            alt.learn_one(fv, label, weight)
            if stats.seen >= self.config.swap_grace:
                alt_rate = stats.alt_errors / stats.seen
                main_rate = stats.main_errors / stats.seen
                if alt_rate < main_rate:
                    self._replace_node(node, alt.root)
                    self.n_swaps += 1
                    break   # the path below this node no longer exists
                if alt_rate > main_rate + 0.05:
                    node.alternate = None
                    node.alt_stats = None


__all__ = ["HoeffdingAdaptiveTreeClassifier", "_Split"]
