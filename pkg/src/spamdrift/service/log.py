"""Append-only newline-delimited JSON log; replay is the recovery mechanism.

Only inputs are required for recovery: event records and feedback records.
Prediction and drift records are audit copies; replay recomputes them from
the deterministic pipeline.
"""

from __future__ import annotations

import json
import os
from typing import Iterator


class EventLog:
    def __init__(self, path: str):
        self.path = path
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        self._fh = open(path, "a", encoding="utf-8")

    def append(self, record: dict) -> None:
        self._fh.write(json.dumps(record, sort_keys=True) + "\n")
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()

    @staticmethod
    def read(path: str) -> Iterator[dict]:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    yield json.loads(line)
