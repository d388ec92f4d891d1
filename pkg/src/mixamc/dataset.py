"""Monte Carlo dataset generation following the benchmark protocol.

Training pools draw each sequence's SNR uniformly from [snr_lo, snr_hi] and
reserve the last 10% of every class block for validation. Test sets hold
exactly ``n_per_class`` sequences per (class, SNR) cell on a fixed grid.

Every sequence is generated from its own counter-based child stream keyed by
(master_seed, kind, class, [snr index,] example index), so output bytes do not
depend on worker count or scheduling order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from mixamc.amcd import GENERATOR_VERSION, Dataset
from mixamc.channel import add_awgn, mix, preprocess
from mixamc.constellations import modulate
from mixamc.labelsets import ClassDef, LabelSet, MixedClass, SingleClass
from mixamc.rng import child_rng, worker_count

DEFAULT_L = 100
DEFAULT_SNR_GRID = tuple(float(s) for s in range(-10, 21, 2))
DEFAULT_N_PER_CLASS = 1000

_KIND_TRAIN = 0
_KIND_TEST = 1
_CHUNK = 512


def _synthesize(cls: ClassDef, snr_db: float, rng: np.random.Generator, L: int):
    """One noisy sequence for ``cls``; returns ((2, L, 1) float32, ratio used)."""
    if isinstance(cls, SingleClass):
        ratio = 0.0
        clean = modulate(cls.scheme, rng.integers(0, cls.scheme.order, L))
    else:
        ratio = float(cls.ratio) if cls.ratio is not None else float(rng.integers(1, 10))
        spec = cls.spec(ratio)
        a = modulate(cls.strong, rng.integers(0, cls.strong.order, L))
        b = modulate(cls.weak, rng.integers(0, cls.weak.order, L))
        clean = mix(a, b, spec)
    noisy = add_awgn(clean, snr_db, rng)
    return preprocess(noisy).astype(np.float32), ratio


def _run_chunks(tasks) -> None:
    workers = worker_count()
    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            task()
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for future in [pool.submit(t) for t in tasks]:
            future.result()


def gen_training(
    labelset: LabelSet,
    n_sample: int,
    snr_lo: float,
    snr_hi: float,
    master_seed: int,
    L: int = DEFAULT_L,
) -> Dataset:
    """Generate ``n_sample`` sequences per class with per-sequence uniform SNR."""
    if n_sample < 10:
        raise ValueError("n_sample must be at least 10 so the 10% validation split is non-empty")
    if snr_lo > snr_hi:
        raise ValueError(f"snr_lo {snr_lo} exceeds snr_hi {snr_hi}")
    if L <= 0:
        raise ValueError("L must be positive")

    n_total = n_sample * len(labelset)
    x = np.empty((n_total, 2, L, 1), dtype=np.float32)
    y = np.empty(n_total, dtype=np.uint16)
    snr = np.empty(n_total, dtype=np.float32)
    ratio = np.empty(n_total, dtype=np.float32)

    def make_chunk(class_id: int, cls: ClassDef, start: int, stop: int):
        def run() -> None:
            base = class_id * n_sample
            for i in range(start, stop):
                rng = child_rng(master_seed, _KIND_TRAIN, class_id, i)
                snr_db = float(rng.uniform(snr_lo, snr_hi))
                xi, ri = _synthesize(cls, snr_db, rng, L)
                x[base + i] = xi
                y[base + i] = class_id
                snr[base + i] = snr_db
                ratio[base + i] = ri

        return run

    tasks = []
    for class_id, cls in enumerate(labelset.classes):
        for start in range(0, n_sample, _CHUNK):
            tasks.append(make_chunk(class_id, cls, start, min(start + _CHUNK, n_sample)))
    _run_chunks(tasks)

    n_val = n_sample // 10
    split = {
        "kind": "train",
        "n_per_class": n_sample,
        "train_per_class": n_sample - n_val,
        "val_per_class": n_val,
    }
    provenance = {
        "seed": master_seed,
        "generator_version": GENERATOR_VERSION,
        "snr_policy": {"kind": "uniform", "lo": snr_lo, "hi": snr_hi},
    }
    return Dataset(labelset, L, x, y, snr, ratio, split, provenance)


def gen_test(
    labelset: LabelSet,
    snr_grid=DEFAULT_SNR_GRID,
    n_per_class: int = DEFAULT_N_PER_CLASS,
    master_seed: int = 0,
    L: int = DEFAULT_L,
) -> Dataset:
    """Generate exactly ``n_per_class`` sequences per (class, SNR) grid cell."""
    snr_grid = [float(s) for s in snr_grid]
    if not snr_grid:
        raise ValueError("snr_grid must not be empty")
    if n_per_class < 1:
        raise ValueError("n_per_class must be positive")
    if L <= 0:
        raise ValueError("L must be positive")

    per_class = n_per_class * len(snr_grid)
    n_total = per_class * len(labelset)
    x = np.empty((n_total, 2, L, 1), dtype=np.float32)
    y = np.empty(n_total, dtype=np.uint16)
    snr = np.empty(n_total, dtype=np.float32)
    ratio = np.empty(n_total, dtype=np.float32)

    def make_chunk(class_id: int, cls: ClassDef, snr_idx: int, start: int, stop: int):
        def run() -> None:
            base = class_id * per_class + snr_idx * n_per_class
            snr_db = snr_grid[snr_idx]
            for i in range(start, stop):
                rng = child_rng(master_seed, _KIND_TEST, class_id, snr_idx, i)
                xi, ri = _synthesize(cls, snr_db, rng, L)
                x[base + i] = xi
                y[base + i] = class_id
                snr[base + i] = snr_db
                ratio[base + i] = ri

        return run

    tasks = []
    for class_id, cls in enumerate(labelset.classes):
        for snr_idx in range(len(snr_grid)):
            for start in range(0, n_per_class, _CHUNK):
                tasks.append(
                    make_chunk(class_id, cls, snr_idx, start, min(start + _CHUNK, n_per_class))
                )
    _run_chunks(tasks)

    split = {"kind": "test", "n_per_class": n_per_class, "snr_grid": snr_grid}
    provenance = {
        "seed": master_seed,
        "generator_version": GENERATOR_VERSION,
        "snr_policy": {"kind": "grid", "grid": snr_grid, "n_per_class": n_per_class},
    }
    return Dataset(labelset, L, x, y, snr, ratio, split, provenance)
