"""The composed online pipeline: features -> profiles -> selection -> model,
with drift detection and retraining wired in.

Per event the order is fixed: extract content features, build word-grams,
enrich with pre-event profile features, predict, score, feed the drift
detector, retrain if it fired, learn, and finally reveal the label to the
profile graph.  The prediction therefore never sees the event's own label or
its own effect on the profiles.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

from .config import ModelConfig, PipelineConfig
from .drift import BaselineDetectorAdapter, DriftReport, TwoWindowDriftDetector
from .learners import DEFAULT_CLASSES, Prediction, grid_search_stream, make_model
from .profiles import ProfileGraph
from .selection import VarianceSelector
from .textfeat import RawEvent, VocabState, build_wordgrams, extract_content_features

logger = logging.getLogger(__name__)

GRAM_PREFIX = "gram:"


@dataclass
class StepResult:
    event: RawEvent
    prediction: Prediction
    features: dict[str, float]          # scalar features (content + profiles)
    wordgrams: dict[str, int]
    model_input: dict[str, float]       # selected scalars + gram columns
    drift_report: DriftReport | None
    retrained: bool


@dataclass
class RetrainEvent:
    sample_index: int
    window_size: int
    model_config: ModelConfig


class SpamPipeline:
    """Single-writer streaming pipeline; process() is sequential by contract."""

    def __init__(self, config: PipelineConfig | None = None):
        self.config = config or PipelineConfig()
        cfg = self.config
        self.classes = DEFAULT_CLASSES
        self.vocab = VocabState(cfg.vocab())
        self.graph = ProfileGraph()
        self.selector = VarianceSelector(cfg.selection.threshold, cfg.selection.period)
        self.model_config = cfg.model
        self.model = make_model(cfg.model, self.classes, seed=cfg.seed)
        self.detector = self._make_detector()
        self._recent: deque[tuple[dict[str, float], dict[str, int], str | None]] = deque(
            maxlen=cfg.detector.max_width
        )
        self.samples = 0
        self.drift_count = 0
        self.retrain_events: list[RetrainEvent] = []
        self.drift_reports: list[DriftReport] = []

    def _make_detector(self):
        kind = self.config.detector_kind
        if kind is None:
            return None
        if kind == "proposed":
            return TwoWindowDriftDetector(self.config.detector)
        return BaselineDetectorAdapter(kind)

    # -- feature assembly -----------------------------------------------------

    def _model_input(self, scalars: dict[str, float], grams: dict[str, int]) -> dict[str, float]:
        selected = self.selector.selected
        fv = {k: v for k, v in scalars.items() if k in selected}
        for g, c in grams.items():
            fv[GRAM_PREFIX + g] = float(c)
        return fv

    # -- main step --------------------------------------------------------------

    def process(self, event: RawEvent) -> StepResult:
        cfg = self.config
        content = extract_content_features(event, include_rating=cfg.profile.has_rating)
        grams = build_wordgrams(event.text, self.vocab)
        scalars = self.graph.enrich(event, content)
        self.selector.observe(scalars)

        model_input = self._model_input(scalars, grams)
        prediction = self.model.predict_proba_one(model_input)

        self._recent.append((scalars, grams, event.label))
        self.samples += 1

        report = None
        retrained = False
        if self.detector is not None and event.label is not None:
            report = self.detector.observe(grams, event.label, prediction.label)
            self.drift_reports.append(report)
            if report.drift:
                self.drift_count += 1
                retrained = True
                self._retrain(report)

        if event.label is not None:
            self.model.learn_one(model_input, event.label)
            self.graph.record_label(event.user_id, event.label)
        return StepResult(event, prediction, scalars, grams, model_input, report, retrained)

    def _retrain_window(self, report: DriftReport) -> list[tuple[dict[str, float], str]]:
        width = report.w_after if report.w_after > 0 else len(self._recent)
        rows = list(self._recent)[-width:]
        window = []
        for scalars, grams, label in rows:
            if label is None:
                continue
            window.append((self._model_input(scalars, grams), label))
        return window

    def _retrain(self, report: DriftReport) -> None:
        """Fresh selection, grid search over the adaptive window, fresh model."""
        self.selector.refresh()
        window = self._retrain_window(report)
        chosen = grid_search_stream(
            self.model_config, window, classes=self.classes, seed=self.config.seed
        )
        if chosen is None:
            logger.warning("drift at %d with empty window; keeping current model", report.sample_index)
            return
        self.model_config = chosen
        self.model = make_model(chosen, self.classes, seed=self.config.seed)
        for fv, label in window:
            self.model.learn_one(fv, label)
        self.retrain_events.append(RetrainEvent(report.sample_index, len(window), chosen))

    # -- inspection ---------------------------------------------------------------

    def export_trees(self) -> list[dict]:
        return self.model.export_trees()

    def drift_reports_jsonl(self) -> str:
        """The full detector report stream as JSON lines."""
        import json
        from dataclasses import asdict

        return "\n".join(json.dumps(asdict(r), sort_keys=True) for r in self.drift_reports)
