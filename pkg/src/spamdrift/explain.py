"""Human-readable explanations: decision paths, path-frequency relevance,
per-user quartile severity, and a natural-language description.

Relevance counts how often a feature appears on the decision paths with a
"greater than" bifurcation; only those positive steps count.  Severity
compares a feature value against the user's own history: green above the
50th percentile, yellow between the 25th and 50th (boundaries included),
red below the 25th, grey when fewer than four observations exist.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from urllib import error as urlerror
from urllib import request as urlrequest

import numpy as np

from .drift import DriftReport

logger = logging.getLogger(__name__)

EFLAW_UNFAVORABLE = 25.0
MIN_HISTORY_FOR_SEVERITY = 4


@dataclass(frozen=True)
class PathStep:
    feature: str
    threshold: float
    direction: str          # "greater" | "less_equal"
    node_id: int


@dataclass(frozen=True)
class DecisionPath:
    tree_id: int
    steps: tuple[PathStep, ...]
    leaf_counts: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "tree_id": self.tree_id,
            "steps": [
                {
                    "feature": s.feature,
                    "threshold": s.threshold,
                    "direction": s.direction,
                    "node_id": s.node_id,
                }
                for s in self.steps
            ],
            "leaf_counts": self.leaf_counts,
        }

    @staticmethod
    def from_dict(d: dict) -> "DecisionPath":
        return DecisionPath(
            tree_id=d["tree_id"],
            steps=tuple(
                PathStep(s["feature"], s["threshold"], s["direction"], s["node_id"])
                for s in d["steps"]
            ),
            leaf_counts=d["leaf_counts"],
        )


def trace_path(tree: dict, fv: dict[str, float], tree_id: int = 0) -> DecisionPath:
    """Deterministic root-to-leaf walk over an exported tree structure."""
    nodes = {n["id"]: n for n in tree["nodes"]}
    node = nodes[tree["root"]]
    steps: list[PathStep] = []
    while node["kind"] == "split":
        feature = node["feature"]
        if feature not in fv:
            logger.debug("feature %s missing from vector; read as 0", feature)
        value = fv.get(feature, 0.0)
        greater = value > node["threshold"]
        steps.append(
            PathStep(
                feature=feature,
                threshold=node["threshold"],
                direction="greater" if greater else "less_equal",
                node_id=node["id"],
            )
        )
        node = nodes[node["right"] if greater else node["left"]]
    return DecisionPath(tree_id=tree_id, steps=tuple(steps), leaf_counts=dict(node["counts"]))


def replay_path(path: DecisionPath, tree: dict, fv: dict[str, float]) -> int:
    """Follow the recorded directions through the tree; returns the leaf id."""
    nodes = {n["id"]: n for n in tree["nodes"]}
    node = nodes[tree["root"]]
    for step in path.steps:
        if node["kind"] != "split" or node["id"] != step.node_id:
            raise ValueError("path does not match tree structure")
        node = nodes[node["right"] if step.direction == "greater" else node["left"]]
    return node["id"]


def feature_relevance(paths: list[DecisionPath], min_frequency: int = 1) -> list[tuple[str, int]]:
    """Features ranked by greater-direction step count across all paths."""
    counts: dict[str, int] = {}
    for path in paths:
        for step in path.steps:
            if step.direction == "greater":
                counts[step.feature] = counts.get(step.feature, 0) + 1
    ranked = [(f, c) for f, c in counts.items() if c >= min_frequency]
    ranked.sort(key=lambda fc: (-fc[1], fc[0]))
    return ranked


def severity(value: float, history: list[float]) -> str:
    """green / yellow / red against the user's own quartiles, grey when unknown."""
    if len(history) < MIN_HISTORY_FOR_SEVERITY:
        return "grey"
    q25, q50 = np.quantile(history, [0.25, 0.5], method="linear")
    if value > q50:
        return "green"
    if value >= q25:
        return "yellow"
    return "red"


@dataclass
class ExplanationPayload:
    event_id: str
    label: str
    confidence: float
    features: list[dict]                 # {feature, value, count, severity}
    paths: list[DecisionPath]
    description: str
    drift: DriftReport | None = None
    description_fallback: bool = False
    trees: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "event_id": self.event_id,
            "label": self.label,
            "confidence": self.confidence,
            "features": self.features,
            "paths": [p.to_dict() for p in self.paths],
            "description": self.description,
            "drift": None
            if self.drift is None
            else {
                "sample_index": self.drift.sample_index,
                "p_value": self.drift.p_value,
                "aad": self.drift.aad,
                "drift": self.drift.drift,
                "w_after": self.drift.w_after,
                "action": self.drift.action,
            },
            "description_fallback": self.description_fallback,
            "trees": self.trees,
        }


class DescriptionGenerator:
    """Interface for external natural-language generators: prompt -> text."""

    def generate(self, prompt: str) -> str:
        raise NotImplementedError


class HttpDescriptionGenerator(DescriptionGenerator):
    """POSTs {"prompt": ...} to an external endpoint; raises on any failure."""

    def __init__(self, endpoint: str, api_key: str | None = None, timeout: float = 5.0):
        self.endpoint = endpoint
        self.api_key = api_key
        self.timeout = timeout

    def generate(self, prompt: str) -> str:
        body = json.dumps({"prompt": prompt}).encode()
        req = urlrequest.Request(self.endpoint, data=body, method="POST")
        req.add_header("Content-Type", "application/json")
        if self.api_key:
            req.add_header("Authorization", f"Bearer {self.api_key}")
        with urlrequest.urlopen(req, timeout=self.timeout) as resp:
            return json.loads(resp.read().decode())["text"]


def build_prompt(payload: ExplanationPayload) -> str:
    """Documented prompt format: serialized paths, prediction, top features."""
    return json.dumps(
        {
            "task": "Describe this spam-classifier decision for a moderator.",
            "prediction": payload.label,
            "confidence": payload.confidence,
            "top_features": payload.features[:5],
            "paths": [p.to_dict() for p in payload.paths],
        },
        sort_keys=True,
    )


def template_description(payload: ExplanationPayload, feature_values: dict[str, float] | None = None) -> str:
    """Deterministic fixed-grammar description of the prediction."""
    pct = round(payload.confidence * 100)
    parts = [f"Classified as {payload.label} with {pct}% confidence"]
    if payload.features:
        tops = ", ".join(f"high {f['feature']}" for f in payload.features[:3])
        parts[0] += f"; driven by {tops}"
    parts[0] += "."
    if not any(path.steps for path in payload.paths):
        parts.append("No informative split; prediction from class prior.")
    values = feature_values or {}
    eflaw = values.get("eflaw")
    if eflaw is not None and eflaw > EFLAW_UNFAVORABLE:
        parts.append(
            f"Readability is unfavorable for non-native speakers (EFLAW {eflaw:.1f} > 25)."
        )
    if values.get("word_count") == 0:
        parts.append("Readability: n/a (empty text).")
    if payload.drift is not None and payload.drift.drift:
        parts.append(
            f"A data drift was detected at sample {payload.drift.sample_index}; "
            "the model was retrained on the current window."
        )
    return " ".join(parts)


def describe(
    payload: ExplanationPayload,
    generator: DescriptionGenerator | None = None,
    feature_values: dict[str, float] | None = None,
) -> tuple[str, bool]:
    """Description text and whether the template fallback was used."""
    if generator is not None:
        try:
            return generator.generate(build_prompt(payload)), False
        except (urlerror.URLError, OSError, KeyError, ValueError, NotImplementedError) as exc:
            logger.warning("external description failed (%s); falling back to template", exc)
            return template_description(payload, feature_values), True
    return template_description(payload, feature_values), False


def build_payload(
    event_id: str,
    prediction,
    fv: dict[str, float],
    trees: list[dict],
    user_history: dict[str, list[float]],
    drift: DriftReport | None = None,
    min_frequency: int = 1,
    generator: DescriptionGenerator | None = None,
    include_trees: bool = True,
) -> ExplanationPayload:
    paths = [trace_path(tree, fv, tree_id=i) for i, tree in enumerate(trees)]
    ranked = feature_relevance(paths, min_frequency)
    features = [
        {
            "feature": f,
            "count": c,
            "value": fv.get(f, 0.0),
            "severity": severity(fv.get(f, 0.0), user_history.get(f, [])),
        }
        for f, c in ranked
    ]
    payload = ExplanationPayload(
        event_id=event_id,
        label=prediction.label,
        confidence=prediction.proba[prediction.label],
        features=features,
        paths=paths,
        description="",
        drift=drift,
        trees=trees if include_trees else [],
    )
    payload.description, payload.description_fallback = describe(payload, generator, fv)
    return payload
