"""Counter-based pseudo-random label generation.

Labels are a pure function of (seed, sample index, leaf index) through a
splitmix64-style finalizer, so trees never need to be materialized and the
numpy block generator below is bit-identical to the scalar one.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(v: int) -> int:
    v = (v + _GAMMA) & _MASK
    v ^= v >> 30
    v = (v * _MIX1) & _MASK
    v ^= v >> 27
    v = (v * _MIX2) & _MASK
    v ^= v >> 31
    return v


def label_at(seed: int, sample: int, leaf: int, n: int) -> int:
    """Leaf label in 1..n for one (sample, leaf) cell."""
    h = mix64(mix64(mix64(seed & _MASK) ^ (sample & _MASK)) ^ (leaf & _MASK))
    return 1 + h % n


def _mix64_np(v: np.ndarray) -> np.ndarray:
    v = (v + np.uint64(_GAMMA))
    v ^= v >> np.uint64(30)
    v *= np.uint64(_MIX1)
    v ^= v >> np.uint64(27)
    v *= np.uint64(_MIX2)
    v ^= v >> np.uint64(31)
    return v


def labels_for_leaf(seed: int, samples: np.ndarray, leaf: int, n: int) -> np.ndarray:
    """Vectorized label_at over an array of sample indices (0-based labels)."""
    base = np.uint64(mix64(seed & _MASK))
    h = _mix64_np(_mix64_np(base ^ samples.astype(np.uint64)) ^ np.uint64(leaf & _MASK))
    return (h % np.uint64(n)).astype(np.int64)
