"""Exhaustive hyperparameter search over a stream window.

Each grid point trains a fresh model prequentially (predict, score, learn)
over the supplied window; the point with the highest prequential accuracy
wins, ties resolving to the earliest point in the documented grid order.
"""

from __future__ import annotations

from dataclasses import replace
from itertools import product

from ..config import ModelConfig
from .base import DEFAULT_CLASSES

GRACE_PERIODS = (50, 200)
SPLIT_CONFIDENCES = (1e-7, 1e-5)
TIE_THRESHOLDS = (0.05,)
LEAF_MODES = ("mc", "nba")
ARFC_N_TREES = (3, 10)


def grid_points(base: ModelConfig) -> list[ModelConfig]:
    """The documented grid order: itertools.product over the tuples above."""
    points = []
    for grace, delta, tau, leaf in product(
        GRACE_PERIODS, SPLIT_CONFIDENCES, TIE_THRESHOLDS, LEAF_MODES
    ):
        point = replace(
            base,
            grace_period=grace,
            split_confidence=delta,
            tie_threshold=tau,
            leaf_prediction=leaf,
        )
        if base.kind == "arfc":
            points.extend(replace(point, n_trees=n) for n in ARFC_N_TREES)
        else:
            points.append(point)
    return points


def grid_search_stream(
    base: ModelConfig,
    window: list[tuple[dict[str, float], str]],
    classes: tuple[str, ...] = DEFAULT_CLASSES,
    seed: int = 42,
    grid: list[ModelConfig] | None = None,
) -> ModelConfig | None:
    """Best hyperparameters for the window; None when the window is empty."""
    if not window:
        return None
    from . import make_model

    best_cfg = None
    best_correct = -1
    for point in grid if grid is not None else grid_points(base):
        model = make_model(point, classes=classes, seed=seed)
        correct = 0
        for fv, label in window:
            if model.predict_proba_one(fv).label == label:
                correct += 1
            model.learn_one(fv, label)
        if correct > best_correct:
            best_correct = correct
            best_cfg = point
    return best_cfg
