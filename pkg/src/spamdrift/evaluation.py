"""Prequential (test-then-train) evaluation and the four run scenarios.

Scenario 1 runs one pipeline over the whole stream; scenario 2 splits the
chronologically ordered stream into consecutive blocks, one isolated
pipeline per worker thread; scenarios 3 and 4 are the same with drift
detection and adaptation enabled.  Multi-thread metrics are the per-thread
confusion matrices summed, with the derived metrics recomputed from the sum.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .config import ModelConfig, PipelineConfig
from .learners import DEFAULT_CLASSES, Prediction
from .pipeline import SpamPipeline
from .textfeat import RawEvent


@dataclass
class MetricsState:
    classes: tuple[str, ...] = DEFAULT_CLASSES
    confusion: dict[str, dict[str, int]] = field(default_factory=dict)
    samples: int = 0
    correct: int = 0

    def update(self, actual: str, predicted: str) -> None:
        self.confusion.setdefault(actual, {}).setdefault(predicted, 0)
        self.confusion[actual][predicted] += 1
        self.samples += 1
        self.correct += actual == predicted

    @property
    def accuracy(self) -> float:
        return self.correct / self.samples if self.samples else 0.0

    def f_measure(self, cls: str) -> float:
        tp = self.confusion.get(cls, {}).get(cls, 0)
        fn = sum(self.confusion.get(cls, {}).values()) - tp
        fp = sum(row.get(cls, 0) for actual, row in self.confusion.items() if actual != cls)
        denom = 2 * tp + fp + fn
        return 2 * tp / denom if denom else 0.0

    @property
    def macro_f(self) -> float:
        return sum(self.f_measure(c) for c in self.classes) / len(self.classes)

    def merge(self, other: "MetricsState") -> None:
        for actual, row in other.confusion.items():
            for predicted, count in row.items():
                self.confusion.setdefault(actual, {}).setdefault(predicted, 0)
                self.confusion[actual][predicted] += count
        self.samples += other.samples
        self.correct += other.correct

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "accuracy": self.accuracy,
            "f_measure": {c: self.f_measure(c) for c in self.classes},
            "macro_f": self.macro_f,
            "confusion": {a: dict(sorted(r.items())) for a, r in sorted(self.confusion.items())},
        }


def prequential_step(pipeline: SpamPipeline, event: RawEvent, metrics: MetricsState) -> Prediction:
    """Predict, score, then let the pipeline train on the revealed label."""
    result = pipeline.process(event)
    if event.label is not None:
        metrics.update(event.label, result.prediction.label)
    return result.prediction


def partition_chronological(events: list[RawEvent], threads: int) -> list[list[RawEvent]]:
    """Consecutive near-equal blocks preserving order; empty tails dropped."""
    if threads < 1:
        raise ValueError("threads must be >= 1")
    n = len(events)
    base, rem = divmod(n, threads)
    blocks = []
    start = 0
    for i in range(threads):
        size = base + (1 if i < rem else 0)
        if size == 0:
            break
        blocks.append(events[start:start + size])
        start += size
    return blocks


def balanced_subset(events: list[RawEvent], seed: int) -> list[RawEvent]:
    """Equal class counts by undersampling the majority, re-sorted by time."""
    spam = [e for e in events if e.label == "spam"]
    nonspam = [e for e in events if e.label == "nonspam"]
    if not spam or not nonspam:
        raise ValueError("both classes must be present to balance")
    minority, majority = (spam, nonspam) if len(spam) <= len(nonspam) else (nonspam, spam)
    sampled = random.Random(seed).sample(majority, len(minority))
    subset = minority + sampled
    subset.sort(key=lambda e: e.timestamp)
    return subset


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: int
    model_kind: str = "htc"
    detector: str = "proposed"          # proposed | eddm | adwin
    threads: int = 1
    seed: int = 42
    profile_name: str = "yelp"
    pipeline: PipelineConfig | None = None

    def __post_init__(self) -> None:
        if self.scenario not in (1, 2, 3, 4):
            raise ValueError("scenario must be in 1..4")
        if self.scenario in (1, 4) and self.threads != 1:
            raise ValueError("scenarios 1 and 4 run on a single thread")
        if self.scenario in (2, 3) and not 2 <= self.threads:
            raise ValueError("scenarios 2 and 3 need multiple threads")

    @property
    def drift_enabled(self) -> bool:
        return self.scenario in (3, 4)


@dataclass
class ScenarioReport:
    scenario: int
    model_kind: str
    detector: str | None
    threads: int
    metrics: MetricsState
    runtime_seconds: float
    drifts_total: int
    drifts_per_thread: list[int]
    samples_per_second: float

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "model": self.model_kind,
            "detector": self.detector,
            "threads": self.threads,
            "metrics": self.metrics.to_dict(),
            "runtime_seconds": self.runtime_seconds,
            "drifts_total": self.drifts_total,
            "drifts_per_thread": self.drifts_per_thread,
            "samples_per_second": self.samples_per_second,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _pipeline_config(cfg: ScenarioConfig) -> PipelineConfig:
    base = cfg.pipeline or PipelineConfig()
    from .config import DatasetProfile

    profile = base.profile if cfg.pipeline else DatasetProfile.by_name(cfg.profile_name)
    model = replace(base.model, kind=cfg.model_kind)
    detector_kind = cfg.detector if cfg.drift_enabled else None
    return replace(base, profile=profile, model=model, detector_kind=detector_kind, seed=cfg.seed)


def _run_block(config: PipelineConfig, events: list[RawEvent]) -> tuple[MetricsState, int]:
    pipeline = SpamPipeline(config)
    metrics = MetricsState()
    for event in events:
        prequential_step(pipeline, event, metrics)
    return metrics, pipeline.drift_count


def compare_detectors(
    events: list[RawEvent],
    model_kind: str = "htc",
    detectors: tuple[str, ...] = ("proposed", "eddm", "adwin"),
    seed: int = 42,
    pipeline: PipelineConfig | None = None,
) -> dict[str, ScenarioReport]:
    """Single-thread drift-adaptive run per detector, for side-by-side reports."""
    return {
        d: run_scenario(
            ScenarioConfig(scenario=4, model_kind=model_kind, detector=d, seed=seed, pipeline=pipeline),
            events,
        )
        for d in detectors
    }


def run_scenario(cfg: ScenarioConfig, events: list[RawEvent]) -> ScenarioReport:
    config = _pipeline_config(cfg)
    blocks = partition_chronological(events, cfg.threads) if cfg.threads > 1 else [events]
    start = time.perf_counter()
    if len(blocks) == 1:
        results = [_run_block(config, blocks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
            results = list(pool.map(lambda b: _run_block(config, b), blocks))
    elapsed = time.perf_counter() - start

    total = MetricsState()
    per_thread_drifts = []
    for metrics, drifts in results:
        total.merge(metrics)
        per_thread_drifts.append(drifts)
    return ScenarioReport(
        scenario=cfg.scenario,
        model_kind=cfg.model_kind,
        detector=cfg.detector if cfg.drift_enabled else None,
        threads=len(blocks),
        metrics=total,
        runtime_seconds=elapsed,
        drifts_total=sum(per_thread_drifts),
        drifts_per_thread=per_thread_drifts,
        samples_per_second=len(events) / elapsed if elapsed > 0 else 0.0,
    )
