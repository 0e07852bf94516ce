"""CSV ingestion into chronologically ordered raw events.

Yelp-style schema: review_id,user_id,item_id,timestamp,rating,text,label.
The mediawiki profile has no rating column; any additional numeric columns
ride along as passthrough features.  Timestamps are UTC seconds or ISO-8601
strings.  Malformed rows are skipped and counted; more than 1% malformed is
fatal.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from datetime import datetime, timezone

from ..config import DatasetProfile
from ..textfeat import RawEvent

BASE_COLUMNS = ("review_id", "user_id", "item_id", "timestamp", "text", "label")
MAX_MALFORMED_FRACTION = 0.01

_LABELS = {"spam": "spam", "nonspam": "nonspam", "non-spam": "nonspam", "ham": "nonspam"}


@dataclass
class IngestReport:
    total_rows: int
    parsed: int
    skipped: int
    class_counts: dict[str, int]
    errors: list[str]


def parse_timestamp(raw: str) -> float:
    raw = raw.strip()
    try:
        return float(raw)
    except ValueError:
        pass
    dt = datetime.fromisoformat(raw)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def _parse_row(row: dict[str, str], profile: DatasetProfile, known: set[str]) -> RawEvent:
    rating = None
    if profile.has_rating:
        raw_rating = (row.get("rating") or "").strip()
        if raw_rating:
            rating = int(raw_rating)
    raw_label = (row.get("label") or "").strip().lower()
    label = None
    if raw_label:
        if raw_label not in _LABELS:
            raise ValueError(f"unknown label {raw_label!r}")
        label = _LABELS[raw_label]
    extra = {}
    for key, value in row.items():
        if key in known or value is None or not value.strip():
            continue
        extra[key] = float(value)
    return RawEvent(
        event_id=row["review_id"],
        user_id=row["user_id"],
        item_id=row["item_id"],
        timestamp=parse_timestamp(row["timestamp"]),
        text=row.get("text") or "",
        rating=rating,
        label=label,
        extra=extra or None,
    )


def read_events(path: str, profile: DatasetProfile) -> tuple[list[RawEvent], IngestReport]:
    known = set(BASE_COLUMNS) | ({"rating"} if profile.has_rating else set())
    events: list[RawEvent] = []
    errors: list[str] = []
    total = 0
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = set(BASE_COLUMNS) - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"missing required columns: {sorted(missing)}")
        for idx, row in enumerate(reader):
            total += 1
            try:
                events.append(_parse_row(row, profile, known))
            except (ValueError, KeyError, TypeError) as exc:
                if len(errors) < 10:
                    errors.append(f"row {idx + 2}: {exc}")
    skipped = total - len(events)
    if total and skipped / total > MAX_MALFORMED_FRACTION:
        raise ValueError(
            f"{skipped}/{total} malformed rows exceeds the 1% budget; first errors: {errors}"
        )
    events.sort(key=lambda e: e.timestamp)
    counts: dict[str, int] = {}
    for e in events:
        if e.label:
            counts[e.label] = counts.get(e.label, 0) + 1
    return events, IngestReport(total, len(events), skipped, counts, errors)
