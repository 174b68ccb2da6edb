"""Labeled, position-based random streams derived from one master seed.

A stream is identified by the master seed plus a path of labels (strings or
integers). The same path always yields the same stream, independent of the
order in which streams are requested, which keeps batched and parallel runs
reproducible.
"""

from __future__ import annotations

import zlib
from collections.abc import Iterator

import numpy as np


def _label_key(label: str | int) -> int:
    if isinstance(label, (int, np.integer)):
        if label < 0:
            raise ValueError("integer labels must be non-negative")
        return int(label)
    return zlib.crc32(str(label).encode("utf-8"))


def stream(seed: int, *labels: str | int) -> np.random.Generator:
    """Return the generator for ``seed`` and the label path ``labels``."""
    key = tuple(_label_key(lab) for lab in labels)
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=key))


def trial_streams(seed: int, label: str, count: int, start: int = 0) -> Iterator[np.random.Generator]:
    """Yield one independent generator per trial index in ``[start, start + count)``."""
    base = _label_key(label)
    for i in range(start, start + count):
        yield np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=(base, i)))


def as_generator(rng: np.random.Generator | int | None) -> np.random.Generator:
    """Accept a generator, a seed, or None and return a generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
