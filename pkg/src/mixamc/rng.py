"""Deterministic random streams and worker-pool sizing.

Every randomized unit of work (one generated sequence, one evaluation batch)
gets its own counter-based generator derived from (master_seed, path), so
results are reproducible bit-for-bit and independent of generation order or
worker count.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_THREADS = "MIXAMC_THREADS"


def child_rng(master_seed: int, *path: int) -> np.random.Generator:
    """Philox generator for the work unit identified by ``path`` under ``master_seed``."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(path))
    return np.random.Generator(np.random.Philox(ss))


def worker_count() -> int:
    """Worker cap from MIXAMC_THREADS (0 or unset = auto)."""
    raw = os.environ.get(_ENV_THREADS, "0")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_ENV_THREADS} must be an integer, got {raw!r}") from exc
    if n < 0:
        raise ValueError(f"{_ENV_THREADS} must be >= 0, got {n}")
    if n == 0:
        return min(8, os.cpu_count() or 1)
    return n
