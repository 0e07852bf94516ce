"""Single-writer service state: pipeline, record store, alerts, feedback.

The pipeline thread is the only writer; request handlers read under the same
lock (readers are cheap at dashboard scale) and feedback is applied between
samples.  Snapshots of the metrics are published every ``snapshot_every``
samples so mid-run reads see a consistent, cadence-aligned view.
"""

from __future__ import annotations

import json
import threading
from dataclasses import asdict, dataclass

from ..config import PipelineConfig
from ..drift import DriftReport
from ..evaluation import MetricsState
from ..explain import DescriptionGenerator, build_payload
from ..pipeline import SpamPipeline
from ..textfeat import RawEvent
from .log import EventLog


@dataclass
class Feedback:
    correct: bool
    ts: float
    moderator_id: str | None = None


def _event_to_dict(event: RawEvent) -> dict:
    d = asdict(event)
    return {k: v for k, v in d.items() if v is not None}


def _event_from_dict(d: dict) -> RawEvent:
    return RawEvent(
        event_id=d["event_id"],
        user_id=d["user_id"],
        item_id=d["item_id"],
        timestamp=d["timestamp"],
        text=d["text"],
        rating=d.get("rating"),
        label=d.get("label"),
        extra=d.get("extra"),
    )


class ServiceState:
    def __init__(
        self,
        config: PipelineConfig | None = None,
        log: EventLog | None = None,
        snapshot_every: int = 50,
        generator: DescriptionGenerator | None = None,
    ):
        self.pipeline = SpamPipeline(config)
        self.log = log
        self.snapshot_every = snapshot_every
        self.generator = generator
        self.lock = threading.RLock()
        self.records: list[dict] = []
        self.by_id: dict[str, dict] = {}
        self.alerts: list[dict] = []
        self.metrics = MetricsState()
        self.metrics_snapshot: dict | None = None

    # -- writer side ---------------------------------------------------------

    def process_event(self, event: RawEvent, write_log: bool = True) -> dict:
        with self.lock:
            result = self.pipeline.process(event)
            if event.label is not None:
                self.metrics.update(event.label, result.prediction.label)
            record = {
                "event_id": event.event_id,
                "sample_index": self.pipeline.samples - 1,
                "event": _event_to_dict(event),
                "prediction": {
                    "label": result.prediction.label,
                    "proba": result.prediction.proba,
                },
                "features": result.features,
                "wordgrams": result.wordgrams,
                "model_input": result.model_input,
                "trees": self.pipeline.export_trees(),
                "drift": None,
                "feedback": None,
            }
            report = result.drift_report
            if report is not None:
                record["drift"] = {
                    "sample_index": report.sample_index,
                    "p_value": report.p_value,
                    "aad": report.aad,
                    "drift": report.drift,
                    "w_after": report.w_after,
                    "action": report.action,
                }
                if report.drift:
                    self.alerts.append(
                        {
                            "alert_id": len(self.alerts),
                            "report": record["drift"],
                            "event_id": event.event_id,
                            "acknowledged": False,
                        }
                    )
            self.records.append(record)
            self.by_id[event.event_id] = record
            if self.log is not None and write_log:
                self.log.append({"type": "event", "event": _event_to_dict(event)})
                self.log.append(
                    {
                        "type": "prediction",
                        "event_id": event.event_id,
                        "prediction": record["prediction"],
                    }
                )
                if report is not None and report.drift:
                    self.log.append({"type": "drift", "report": record["drift"]})
            if self.pipeline.samples % self.snapshot_every == 0:
                self.metrics_snapshot = self.metrics.to_dict()
            return record

    def apply_feedback(
        self,
        event_id: str,
        correct: bool,
        moderator_id: str | None = None,
        ts: float | None = None,
        write_log: bool = True,
    ) -> dict:
        """Audit plus profile correction; never retrains the learner."""
        with self.lock:
            record = self.by_id.get(event_id)
            if record is None:
                raise KeyError(event_id)
            if record["feedback"] is not None:
                raise FileExistsError(event_id)   # conflict: feedback is immutable
            if ts is None:
                ts = float(self.pipeline.samples)
            predicted = record["prediction"]["label"]
            corrected = predicted if correct else _other(predicted)
            prior = record["event"].get("label")
            self.pipeline.graph.apply_feedback(record["event"]["user_id"], prior, corrected)
            record["feedback"] = {"correct": correct, "ts": ts, "moderator_id": moderator_id}
            if self.log is not None and write_log:
                self.log.append(
                    {
                        "type": "feedback",
                        "event_id": event_id,
                        "correct": correct,
                        "ts": ts,
                        "moderator_id": moderator_id,
                    }
                )
            return record

    def acknowledge_alert(self, alert_id: int) -> dict:
        with self.lock:
            if not 0 <= alert_id < len(self.alerts):
                raise KeyError(alert_id)
            self.alerts[alert_id]["acknowledged"] = True
            return self.alerts[alert_id]

    # -- reader side -----------------------------------------------------------

    def explanation(self, event_id: str) -> dict:
        with self.lock:
            record = self.by_id.get(event_id)
            if record is None:
                raise KeyError(event_id)
            user = self.pipeline.graph.users.get(record["event"]["user_id"])
            history = (
                {k: list(v) for k, v in user.history.items()} if user is not None else {}
            )
            drift = None
            if record["drift"] is not None:
                d = record["drift"]
                drift = DriftReport(
                    d["sample_index"], d["p_value"], d["aad"], d["drift"], d["w_after"], d["action"]
                )
            payload = build_payload(
                event_id=event_id,
                prediction=_PredictionView(record["prediction"]),
                fv=record["model_input"],
                trees=record["trees"],
                user_history=history,
                drift=drift,
                generator=self.generator,
            )
            return payload.to_dict()

    def metrics_dict(self) -> dict:
        """Latest cadence-published snapshot; live state before the first one."""
        with self.lock:
            return self.metrics_snapshot or self.metrics.to_dict()

    def metrics_json(self) -> str:
        with self.lock:
            return json.dumps(self.metrics_dict(), sort_keys=True, indent=2)

    def export_json(self) -> str:
        with self.lock:
            doc = {
                "records": [
                    {k: v for k, v in r.items() if k not in ("trees", "model_input")}
                    for r in self.records
                ],
                "alerts": self.alerts,
                "metrics": self.metrics.to_dict(),
                "drifts_total": self.pipeline.drift_count,
            }
            return json.dumps(doc, sort_keys=True, indent=2)


class _PredictionView:
    def __init__(self, d: dict):
        self.label = d["label"]
        self.proba = d["proba"]


def _other(label: str) -> str:
    return "nonspam" if label == "spam" else "spam"


def replay_log(path: str, config: PipelineConfig | None = None, snapshot_every: int = 50) -> ServiceState:
    """Rebuild state by re-running logged events and feedback in order."""
    state = ServiceState(config, log=None, snapshot_every=snapshot_every)
    for record in EventLog.read(path):
        if record["type"] == "event":
            state.process_event(_event_from_dict(record["event"]), write_log=False)
        elif record["type"] == "feedback":
            state.apply_feedback(
                record["event_id"],
                record["correct"],
                record.get("moderator_id"),
                record["ts"],
                write_log=False,
            )
    return state
