import random

import pytest

from spamdrift.textfeat import RawEvent


@pytest.fixture
def toy_event():
    def make(text="The cat sat.", user="u1", item="i1", ts=0.0, rating=None, label=None, eid=None):
        return RawEvent(
            event_id=eid or f"e{random.randrange(10**9)}",
            user_id=user,
            item_id=item,
            timestamp=ts,
            text=text,
            rating=rating,
            label=label,
        )

    return make


@pytest.fixture(scope="session")
def flip_stream():
    from spamdrift.synthetic import vocabulary_flip_stream

    return vocabulary_flip_stream(10_000, 5_000, seed=7)
