"""Incremental per-user and per-item statistics over a user-item graph.

Each scalar content feature accumulates a running average and maximum per
user, per item, and per (item, rating) bucket.  ``enrich`` reads the
pre-event state into the feature vector and only then applies the event, so
an event never leaks into its own features (and labels are only folded in
later through ``record_label`` / feedback).
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field

from .textfeat import RawEvent

logger = logging.getLogger(__name__)

SECONDS_PER_WEEK = 604800.0
HISTORY_LIMIT = 512   # per-feature observations kept for severity quantiles


@dataclass
class IncrementalStat:
    """Running mean and maximum; equals batch recomputation within 1e-9."""

    count: int = 0
    avg: float = 0.0
    max: float = 0.0

    def update(self, value: float) -> None:
        if math.isnan(value):
            raise ValueError("NaN observation rejected")
        self.count += 1
        self.avg += (value - self.avg) / self.count
        self.max = value if self.count == 1 else max(self.max, value)


@dataclass
class UserProfile:
    stats: dict[str, IncrementalStat] = field(default_factory=dict)
    history: dict[str, deque] = field(default_factory=dict)
    post_count: int = 0
    labeled_count: int = 0
    spam_count: int = 0
    first_post_ts: float | None = None

    @property
    def spam_tendency(self) -> float:
        return self.spam_count / self.labeled_count if self.labeled_count else 0.0

    def antiquity_weeks(self, now: float) -> float:
        if self.first_post_ts is None:
            return 0.0
        return max(0.0, (now - self.first_post_ts) / SECONDS_PER_WEEK)

    def posting_frequency(self, now: float) -> float:
        return self.post_count / max(self.antiquity_weeks(now), 1.0)

    def observe(self, features: dict[str, float], ts: float) -> None:
        for key, value in features.items():
            self.stats.setdefault(key, IncrementalStat()).update(value)
            self.history.setdefault(key, deque(maxlen=HISTORY_LIMIT)).append(value)
        self.post_count += 1
        if self.first_post_ts is None:
            self.first_post_ts = ts


@dataclass
class ItemProfile:
    stats: dict[str, IncrementalStat] = field(default_factory=dict)
    rating_stats: dict[int, dict[str, IncrementalStat]] = field(default_factory=dict)

    def observe(self, features: dict[str, float], rating: int | None) -> None:
        for key, value in features.items():
            self.stats.setdefault(key, IncrementalStat()).update(value)
        if rating is not None:
            bucket = self.rating_stats.setdefault(rating, {})
            for key, value in features.items():
                if not key.startswith("extra_"):
                    bucket.setdefault(key, IncrementalStat()).update(value)


@dataclass
class ProfileGraph:
    """User and item nodes joined by last-reviewed edges."""

    users: dict[str, UserProfile] = field(default_factory=dict)
    items: dict[str, ItemProfile] = field(default_factory=dict)
    edges: dict[str, dict[str, float]] = field(default_factory=dict)

    def user_degree(self, user_id: str) -> int:
        return len(self.edges.get(user_id, {}))

    def enrich(self, event: RawEvent, content: dict[str, float]) -> dict[str, float]:
        """Content features plus pre-event user/item profile features.

        The event is applied to the profiles only after the read, so the
        returned vector is independent of the event's own effect.
        """
        user = self.users.get(event.user_id)
        item = self.items.get(event.item_id)

        fv = dict(content)
        for key in content:
            ustat = user.stats.get(key) if user else None
            fv[f"user_avg_{key}"] = ustat.avg if ustat and ustat.count else 0.0
            fv[f"user_max_{key}"] = ustat.max if ustat and ustat.count else 0.0
            istat = item.stats.get(key) if item else None
            fv[f"item_avg_{key}"] = istat.avg if istat and istat.count else 0.0
            fv[f"item_max_{key}"] = istat.max if istat and istat.count else 0.0
            if not key.startswith("extra_"):
                rstat = None
                if item and event.rating is not None:
                    rstat = item.rating_stats.get(event.rating, {}).get(key)
                fv[f"item_rating_avg_{key}"] = rstat.avg if rstat and rstat.count else 0.0
                fv[f"item_rating_max_{key}"] = rstat.max if rstat and rstat.count else 0.0

        fv["user_post_count"] = float(user.post_count) if user else 0.0
        fv["user_spam_tendency"] = user.spam_tendency if user else 0.0
        fv["user_antiquity_weeks"] = user.antiquity_weeks(event.timestamp) if user else 0.0
        fv["user_posting_frequency"] = user.posting_frequency(event.timestamp) if user else 0.0

        self._apply(event, content)
        return fv

    def _apply(self, event: RawEvent, content: dict[str, float]) -> None:
        user = self.users.setdefault(event.user_id, UserProfile())
        user.observe(content, event.timestamp)
        item = self.items.setdefault(event.item_id, ItemProfile())
        item.observe(content, event.rating)
        self.edges.setdefault(event.user_id, {})[event.item_id] = event.timestamp

    def record_label(self, user_id: str, label: str) -> None:
        """Fold a prequentially revealed label into the user's spam tendency."""
        user = self.users.get(user_id)
        if user is None:
            logger.warning("record_label for unknown user %s ignored", user_id)
            return
        user.labeled_count += 1
        if label == "spam":
            user.spam_count += 1

    def apply_feedback(self, user_id: str, prior_label: str | None, corrected_label: str) -> None:
        """Replace a previously counted label (or supply a missing one)."""
        user = self.users.get(user_id)
        if user is None:
            logger.warning("feedback for unknown user %s ignored", user_id)
            return
        if prior_label is not None and user.labeled_count > 0:
            user.labeled_count -= 1
            if prior_label == "spam" and user.spam_count > 0:
                user.spam_count -= 1
        user.labeled_count += 1
        if corrected_label == "spam":
            user.spam_count += 1
