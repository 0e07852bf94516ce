"""Synthetic streams for tests, the acceptance suite, and CLI demos.

Token families are made-up words chosen so the preprocessing pass keeps them
intact (alphabetic, not stop words, unaffected by the suffix stemmer).
"""

from __future__ import annotations

import random

from .textfeat import RawEvent

_SUFFIXES = ("on", "ek", "ar", "im", "ut", "or", "en", "ik", "al", "um")

FAMILY_A = tuple(f"zap{s}" for s in _SUFFIXES)
FAMILY_B = tuple(f"querm{s}" for s in _SUFFIXES)
FAMILY_C = tuple(f"flux{s}" for s in _SUFFIXES)
FILLER = ("visit", "place", "menu", "table", "corner", "window", "street", "garden")


def _doc(rng: random.Random, family: tuple[str, ...], n_family: int = 4, n_filler: int = 2) -> str:
    words = [rng.choice(family) for _ in range(n_family)]
    words += [rng.choice(FILLER) for _ in range(n_filler)]
    rng.shuffle(words)
    return " ".join(words) + "."


def _event(i: int, text: str, label: str, rng: random.Random, unique_actors: bool) -> RawEvent:
    if unique_actors:
        user, item = f"user{i:06d}", f"item{i:06d}"
    else:
        user, item = f"user{rng.randrange(50):03d}", f"item{rng.randrange(50):03d}"
    return RawEvent(
        event_id=f"ev{i:06d}",
        user_id=user,
        item_id=item,
        timestamp=1_600_000_000.0 + 60.0 * i,
        text=text,
        rating=rng.randint(1, 5),
        label=label,
    )


def vocabulary_flip_stream(n: int = 10_000, flip_at: int = 5_000, seed: int = 7) -> list[RawEvent]:
    """Two token families swap class association at ``flip_at``.

    Before the flip spam draws from family A and non-spam from family B;
    afterwards spam draws from family B and non-spam from a brand-new family
    C, so both the gram distribution and the gram-label mapping move.  A
    model frozen at the flip keeps predicting the stale mapping and lands
    far below chance on the post-flip half.  Every event has a fresh user
    and item so recovery cannot ride on profile history instead of text.
    """
    rng = random.Random(seed)
    events = []
    for i in range(n):
        label = "spam" if rng.random() < 0.5 else "nonspam"
        if i < flip_at:
            family = FAMILY_A if label == "spam" else FAMILY_B
        else:
            family = FAMILY_B if label == "spam" else FAMILY_C
        events.append(_event(i, _doc(rng, family), label, rng, unique_actors=True))
    return events


def stationary_stream(n: int = 3_000, seed: int = 11) -> list[RawEvent]:
    """Stationary, trivially learnable stream: one family per class throughout.

    Dense family tokens keep the cold-start accuracy close to steady state,
    so the accuracy side of the drift condition stays quiet.
    """
    rng = random.Random(seed)
    events = []
    for i in range(n):
        label = "spam" if rng.random() < 0.5 else "nonspam"
        family = FAMILY_A if label == "spam" else FAMILY_B
        text = _doc(rng, family, n_family=6, n_filler=1)
        events.append(_event(i, text, label, rng, unique_actors=False))
    return events


def numeric_stream(n: int, seed: int = 3) -> list[tuple[dict[str, float], str]]:
    """label = [x > 0.5] with x uniform; feature-vector level stream."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        x = rng.random()
        out.append(({"x": x}, "spam" if x > 0.5 else "nonspam"))
    return out
