from __future__ import annotations

import hashlib
import json
from typing import Any

import numpy as np

SEED_MASK = (1 << 64) - 1


def _label_word(label: Any) -> int:
    payload = json.dumps(label, sort_keys=True, default=str, separators=(",", ":"))
    digest = hashlib.sha256(payload.encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big")


def derive_rng(seed: int, *labels: Any) -> np.random.Generator:
    """Independent generator for the stream named by ``labels`` under ``seed``.

    Equal (seed, labels) pairs always give identical draws, whatever thread or
    order the caller runs in.
    """
    spawn_key = tuple(_label_word(label) for label in labels)
    sequence = np.random.SeedSequence(entropy=int(seed) & SEED_MASK, spawn_key=spawn_key)
    return np.random.default_rng(sequence)


def draw_ints(rng: np.random.Generator, count: int, low: int, high: int) -> list[int]:
    if count <= 0:
        return []
    return [int(value) for value in rng.integers(low, high, size=count, endpoint=True)]
