"""Online tree classifiers: HTC, HATC, and ARFC."""

from __future__ import annotations

from ..config import ModelConfig
from .adaptive import HoeffdingAdaptiveTreeClassifier
from .base import DEFAULT_CLASSES, ExportedTree, Prediction, argmax_label, hoeffding_bound, laplace_proba
from .forest import AdaptiveRandomForestClassifier
from .grid import grid_points, grid_search_stream
from .hoeffding import HoeffdingTreeClassifier

MODEL_KINDS = ("htc", "hatc", "arfc")


def make_model(
    config: ModelConfig,
    classes: tuple[str, ...] = DEFAULT_CLASSES,
    seed: int = 42,
    allowed_features: set[str] | None = None,
):
    if config.kind == "htc":
        return HoeffdingTreeClassifier(config, classes, allowed_features)
    if config.kind == "hatc":
        return HoeffdingAdaptiveTreeClassifier(config, classes, allowed_features)
    if config.kind == "arfc":
        return AdaptiveRandomForestClassifier(config, classes, seed=seed)
    raise ValueError(f"unknown model kind: {config.kind!r}")


__all__ = [
    "AdaptiveRandomForestClassifier",
    "DEFAULT_CLASSES",
    "ExportedTree",
    "HoeffdingAdaptiveTreeClassifier",
    "HoeffdingTreeClassifier",
    "MODEL_KINDS",
    "Prediction",
    "argmax_label",
    "grid_points",
    "grid_search_stream",
    "hoeffding_bound",
    "laplace_proba",
    "make_model",
]
