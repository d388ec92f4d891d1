"""Average likelihood ratio test over known alphabets: the accuracy upper bound.

Under hypothesis i with composite alphabet S_i and known noise variance
sigma2, each received symbol has density

    f(r(n) | H_i) = (1/|S_i|) * sum_p (1/(pi*sigma2)) * exp(-|r(n) - p|^2 / sigma2)

and the sequence log-likelihood is the sum of per-symbol logs, computed with
max-subtracted log-sum-exp (the naive product underflows at L=100). The
decision picks the hypothesis maximizing log prior + log-likelihood, ties
going to the lowest class id.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from mixamc.amcd import Dataset
from mixamc.channel import MixSpec, noise_variance
from mixamc.constellations import Scheme, constellation
from mixamc.dataset import DEFAULT_L, DEFAULT_N_PER_CLASS, DEFAULT_SNR_GRID, gen_test
from mixamc.evaluate import AccuracyCurve, curve
from mixamc.labelsets import LabelSet, MixedClass, SingleClass
from mixamc.rng import worker_count

_BATCH = 512


@dataclass(frozen=True)
class Hypothesis:
    """One candidate class: its id and the composite alphabet it transmits."""

    class_id: int
    points: np.ndarray

    @property
    def cardinality(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class AlrtConfig:
    """Known noise variance and per-hypothesis priors (None = uniform)."""

    sigma2: float
    priors: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not self.sigma2 > 0:
            raise ValueError(f"sigma2 must be positive, got {self.sigma2}")
        if self.priors is not None:
            p = np.asarray(self.priors, dtype=np.float64)
            if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
                raise ValueError("priors must be non-negative and sum to 1")


def composite_points(spec: MixSpec) -> np.ndarray:
    """All sqrt(E_s)*p + sqrt(E_w)*q, strong index major, weak index minor."""
    strong = constellation(spec.strong).points
    weak = constellation(spec.weak).points
    grid = np.sqrt(spec.e_strong) * strong[:, None] + np.sqrt(spec.e_weak) * weak[None, :]
    return grid.ravel()


def hypotheses_for(labelset: LabelSet, ratio: float | None = None) -> list[Hypothesis]:
    """Hypothesis table for a label set; ``ratio`` fills in random-ratio classes."""
    out = []
    for class_id, cls in enumerate(labelset.classes):
        if isinstance(cls, SingleClass):
            points = constellation(cls.scheme).points
        else:
            points = composite_points(cls.spec(ratio))
        out.append(Hypothesis(class_id, points))
    return out


def _batch_log_likelihood(r: np.ndarray, points: np.ndarray, sigma2: float) -> np.ndarray:
    """Stabilized log f(r | points, sigma2) for a (N, L) batch; returns (N,)."""
    dr = r.real[:, :, None] - points.real[None, None, :]
    di = r.imag[:, :, None] - points.imag[None, None, :]
    a = -(dr * dr + di * di) / sigma2
    m = a.max(axis=2)
    per_symbol = m + np.log(np.mean(np.exp(a - m[:, :, None]), axis=2))
    return per_symbol.sum(axis=1) - r.shape[1] * np.log(np.pi * sigma2)


def log_likelihood(r: np.ndarray, hypothesis: Hypothesis, cfg: AlrtConfig) -> float:
    """Sequence log-likelihood of ``r`` under one hypothesis."""
    r = np.asarray(r, dtype=np.complex128)
    if r.size == 0:
        raise ValueError("cannot evaluate the likelihood of an empty sequence")
    if hypothesis.cardinality == 0:
        raise ValueError("hypothesis has an empty alphabet")
    return float(_batch_log_likelihood(r[None, :], hypothesis.points, cfg.sigma2)[0])


def _log_priors(cfg: AlrtConfig, n: int) -> np.ndarray:
    if cfg.priors is None:
        return np.full(n, -np.log(n))
    if len(cfg.priors) != n:
        raise ValueError(f"{len(cfg.priors)} priors for {n} hypotheses")
    with np.errstate(divide="ignore"):
        return np.log(np.asarray(cfg.priors, dtype=np.float64))


def classify_batch(r: np.ndarray, hypotheses: list[Hypothesis], cfg: AlrtConfig) -> np.ndarray:
    """Predicted class ids for a (N, L) batch of sequences."""
    if len(hypotheses) < 2:
        raise ValueError("classification needs at least two hypotheses")
    order = sorted(range(len(hypotheses)), key=lambda i: hypotheses[i].class_id)
    log_prior = _log_priors(cfg, len(hypotheses))
    scores = np.empty((r.shape[0], len(hypotheses)))
    for col, i in enumerate(order):
        scores[:, col] = log_prior[i] + _batch_log_likelihood(r, hypotheses[i].points, cfg.sigma2)
    ids = np.array([hypotheses[i].class_id for i in order])
    # argmax returns the first maximum, i.e. the lowest class id on ties
    return ids[np.argmax(scores, axis=1)]


def classify(r: np.ndarray, hypotheses: list[Hypothesis], cfg: AlrtConfig) -> int:
    """Predicted class id for one sequence."""
    r = np.asarray(r, dtype=np.complex128)
    return int(classify_batch(r[None, :], hypotheses, cfg)[0])


def _to_complex(ds: Dataset, idx: np.ndarray) -> np.ndarray:
    return ds.x[idx, 0, :, 0].astype(np.float64) + 1j * ds.x[idx, 1, :, 0].astype(np.float64)


def predict_dataset(ds: Dataset) -> np.ndarray:
    """ALRT predictions for every example, with sigma2 taken from the stored SNR.

    For random-ratio label sets the hypothesis table is conditioned on each
    example's stored ratio (the bound assumes the power split is known).
    """
    random_ratio = ds.labelset.random_ratio
    fixed_hypotheses = None if random_ratio else hypotheses_for(ds.labelset)

    preds = np.empty(len(ds), dtype=np.int64)
    keys = np.stack([ds.snr_db, ds.ratio if random_ratio else np.zeros(len(ds))], axis=1)
    groups = np.unique(keys, axis=0)

    def run_group(key) -> None:
        snr_db, ratio = float(key[0]), float(key[1])
        idx = np.where((keys == key).all(axis=1))[0]
        hyps = fixed_hypotheses if fixed_hypotheses is not None else hypotheses_for(ds.labelset, ratio)
        cfg = AlrtConfig(sigma2=noise_variance(snr_db))
        for start in range(0, len(idx), _BATCH):
            chunk = idx[start : start + _BATCH]
            preds[chunk] = classify_batch(_to_complex(ds, chunk), hyps, cfg)

    workers = worker_count()
    if workers <= 1 or len(groups) <= 1:
        for key in groups:
            run_group(key)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for future in [pool.submit(run_group, key) for key in groups]:
                future.result()
    return preds


def evaluate_bound(
    labelset: LabelSet,
    snr_grid=DEFAULT_SNR_GRID,
    n_per_class: int = DEFAULT_N_PER_CLASS,
    master_seed: int = 0,
    L: int = DEFAULT_L,
) -> AccuracyCurve:
    """Accuracy-vs-SNR of the ALRT bound on freshly generated test data."""
    ds = gen_test(labelset, snr_grid, n_per_class, master_seed, L)
    preds = predict_dataset(ds)
    return curve(ds.y, preds, ds.snr_db, labelset)
