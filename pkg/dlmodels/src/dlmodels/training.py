"""Training loop, prediction export, and accuracy bucketing.

Defaults follow the benchmark protocol: Adam with learning rate 1e-4 and
epsilon 1e-8 (beta1 0.9, beta2 0.999, no decay), multi-class cross-entropy,
batch size 100 with per-epoch reshuffling, at most 100 epochs, early stopping
when validation loss has not improved for 10 consecutive epochs, and the
best-validation weights restored afterwards. Runs are seeded; bit-exact
reproducibility additionally requires single-threaded ops (see README).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import keras
import numpy as np

from dlmodels.amcd_io import AmcdFile, read_amcd
from dlmodels.archs import to_model_inputs


@dataclass
class TrainConfig:
    learning_rate: float = 1e-4
    epsilon: float = 1e-8
    beta_1: float = 0.9
    beta_2: float = 0.999
    batch_size: int = 100
    max_epochs: int = 100
    patience: int = 10
    seed: int = 0
    verbose: int = 0


def _as_file(data) -> AmcdFile:
    return data if isinstance(data, AmcdFile) else read_amcd(data)


def compile_model(model: keras.Model, cfg: TrainConfig) -> None:
    model.compile(
        optimizer=keras.optimizers.Adam(
            learning_rate=cfg.learning_rate,
            epsilon=cfg.epsilon,
            beta_1=cfg.beta_1,
            beta_2=cfg.beta_2,
        ),
        loss="sparse_categorical_crossentropy",
        metrics=["accuracy"],
    )


def train_arrays(model: keras.Model, x_train, y_train, x_val, y_val, cfg: TrainConfig,
                 layout: str = "image"):
    """Fit on pre-split arrays in AMCD (N, 2, L, 1) layout; returns History."""
    n_out = model.output_shape[-1]
    if len(y_train) and int(np.max(y_train)) >= n_out:
        raise ValueError(f"labels reach {int(np.max(y_train))} but model has {n_out} outputs")

    keras.utils.set_random_seed(cfg.seed)
    compile_model(model, cfg)
    return model.fit(
        to_model_inputs(x_train, layout),
        np.asarray(y_train),
        validation_data=(to_model_inputs(x_val, layout), np.asarray(y_val)),
        batch_size=cfg.batch_size,
        epochs=cfg.max_epochs,
        shuffle=True,
        verbose=cfg.verbose,
        callbacks=[
            keras.callbacks.EarlyStopping(
                monitor="val_loss", patience=cfg.patience, restore_best_weights=True
            )
        ],
    )


def train(model: keras.Model, data, cfg: TrainConfig, layout: str = "image"):
    """Fit ``model`` on an AMCD training file (or loaded AmcdFile); returns History."""
    ds = _as_file(data)
    n_out = model.output_shape[-1]
    if ds.n_classes != n_out:
        raise ValueError(f"model has {n_out} outputs but dataset has {ds.n_classes} classes")
    train_idx, val_idx = ds.train_val_indices()
    return train_arrays(
        model, ds.x[train_idx], ds.y[train_idx], ds.x[val_idx], ds.y[val_idx], cfg, layout
    )


def predict_classes(model: keras.Model, x, layout: str = "image", batch_size: int = 256) -> np.ndarray:
    probs = model.predict(to_model_inputs(x, layout), batch_size=batch_size, verbose=0)
    return np.argmax(probs, axis=1)


def predict_to_csv(model: keras.Model, data, out_path, layout: str = "image") -> np.ndarray:
    """Write ``index,true,pred,snr_db`` rows for a test file; returns predictions."""
    ds = _as_file(data)
    preds = predict_classes(model, ds.x, layout)
    with open(out_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["index", "true", "pred", "snr_db"])
        for i, (t, p, s) in enumerate(zip(ds.y, preds, ds.snr_db)):
            writer.writerow([i, int(t), int(p), f"{float(s):g}"])
    return preds


def accuracy_by_snr(y_true, y_pred, snr_db) -> dict[float, float]:
    """Mean accuracy per SNR bucket, keyed by the bucket's nominal SNR."""
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    snr_db = np.asarray(snr_db)
    out = {}
    for s in np.unique(snr_db):
        mask = snr_db == s
        out[float(s)] = float(np.mean(y_true[mask] == y_pred[mask]))
    return out


def history_to_csv(history, path) -> None:
    """Per-epoch train/validation loss and accuracy as CSV."""
    keys = ["loss", "accuracy", "val_loss", "val_accuracy"]
    rows = {k: history.history.get(k, []) for k in keys}
    n = max((len(v) for v in rows.values()), default=0)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["epoch"] + keys)
        for i in range(n):
            writer.writerow([i] + [f"{rows[k][i]:.6f}" if i < len(rows[k]) else "" for k in keys])
