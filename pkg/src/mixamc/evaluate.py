"""Confusion matrices, accuracy-vs-SNR curves, and CSV report data.

CSV conventions: curves are ``snr_db,accuracy[,class_<name>...]`` rows and
matrices are a labeled K x K grid (rows = true class). All floats are written
with six decimals so reports are byte-stable. Report files follow the
``{labelset}_{classifier}_{metric}[_{snr}].csv`` naming convention.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from mixamc.labelsets import LabelSet


class GridMismatchError(ValueError):
    """Curves to be merged disagree on their SNR grid."""


@dataclass(frozen=True)
class ConfusionMatrix:
    """Count grid over (true, predicted) classes, optionally for one SNR bucket."""

    labels: tuple[str, ...]
    counts: np.ndarray
    snr_db: float | None = None

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def accuracy(self) -> float:
        return float(np.trace(self.counts) / self.counts.sum())

    def per_class_accuracy(self) -> np.ndarray:
        row_sums = self.counts.sum(axis=1)
        with np.errstate(invalid="ignore"):
            return np.where(row_sums > 0, np.diag(self.counts) / row_sums, np.nan)


@dataclass(frozen=True)
class AccuracyCurve:
    """Aggregate accuracy per SNR point, with an optional per-class breakdown."""

    snr_db: tuple[float, ...]
    accuracy: tuple[float, ...]
    per_class: dict[str, tuple[float, ...]] | None = None

    def __post_init__(self) -> None:
        if len(self.snr_db) != len(self.accuracy):
            raise ValueError("one accuracy value per SNR point required")
        if any(not 0.0 <= a <= 1.0 for a in self.accuracy):
            raise ValueError("accuracies must lie in [0, 1]")


def _check_labels(y_true, y_pred, n_classes: int):
    t = np.asarray(y_true, dtype=np.int64)
    p = np.asarray(y_pred, dtype=np.int64)
    if t.shape != p.shape:
        raise ValueError(f"label arrays differ in length: {t.shape} vs {p.shape}")
    for name, arr in (("true", t), ("predicted", p)):
        if arr.size and (arr.min() < 0 or arr.max() >= n_classes):
            raise ValueError(f"{name} labels outside [0, {n_classes})")
    return t, p


def confusion(y_true, y_pred, labelset: LabelSet, snr_db: float | None = None) -> ConfusionMatrix:
    """Count grid with rows = true class, columns = predicted class."""
    k = len(labelset)
    t, p = _check_labels(y_true, y_pred, k)
    counts = np.bincount(t * k + p, minlength=k * k).reshape(k, k)
    return ConfusionMatrix(labels=labelset.class_names, counts=counts, snr_db=snr_db)


def curve(y_true, y_pred, snr_db, labelset: LabelSet, per_class: bool = False) -> AccuracyCurve:
    """Accuracy per SNR bucket; buckets come from the distinct values in ``snr_db``."""
    t, p = _check_labels(y_true, y_pred, len(labelset))
    snr = np.asarray(snr_db, dtype=np.float64)
    if snr.shape != t.shape:
        raise ValueError("snr_db must align with the label arrays")
    if t.size == 0:
        raise ValueError("cannot build a curve from zero predictions")

    points = np.unique(snr)
    acc = []
    by_class: dict[str, list[float]] = {name: [] for name in labelset.class_names}
    for s in points:
        mask = snr == s
        cm = confusion(t[mask], p[mask], labelset, snr_db=float(s))
        acc.append(cm.accuracy)
        if per_class:
            for name, a in zip(labelset.class_names, cm.per_class_accuracy()):
                by_class[name].append(float(a))
    return AccuracyCurve(
        snr_db=tuple(float(s) for s in points),
        accuracy=tuple(acc),
        per_class={k: tuple(v) for k, v in by_class.items()} if per_class else None,
    )


def accuracy_from_labels(y_true, y_pred) -> float:
    t = np.asarray(y_true)
    p = np.asarray(y_pred)
    return float(np.mean(t == p))


def report_filename(labelset_name: str, classifier: str, metric: str, snr_db: float | None = None) -> str:
    suffix = "" if snr_db is None else f"_{snr_db:g}"
    return f"{labelset_name}_{classifier}_{metric}{suffix}.csv"


def export_curve_csv(curve_: AccuracyCurve, path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        names = list(curve_.per_class) if curve_.per_class else []
        writer.writerow(["snr_db", "accuracy"] + [f"class_{n}" for n in names])
        for i, s in enumerate(curve_.snr_db):
            row = [f"{s:.6f}", f"{curve_.accuracy[i]:.6f}"]
            row += [f"{curve_.per_class[n][i]:.6f}" for n in names]
            writer.writerow(row)


def export_matrix_csv(matrix: ConfusionMatrix, path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["true\\pred"] + list(matrix.labels))
        for name, row in zip(matrix.labels, matrix.counts):
            writer.writerow([name] + [str(int(v)) for v in row])


def export_csv(obj, path) -> None:
    """Write a curve or confusion matrix to ``path`` in its CSV convention."""
    if isinstance(obj, AccuracyCurve):
        export_curve_csv(obj, path)
    elif isinstance(obj, ConfusionMatrix):
        export_matrix_csv(obj, path)
    else:
        raise TypeError(f"cannot export {type(obj).__name__} as CSV")


def read_curve_csv(path) -> AccuracyCurve:
    """Parse a curve CSV written by export_curve_csv (per-class columns included)."""
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows or rows[0][:2] != ["snr_db", "accuracy"]:
        raise ValueError(f"{path}: not an accuracy-curve CSV")
    class_names = [c.removeprefix("class_") for c in rows[0][2:]]
    snr = tuple(float(r[0]) for r in rows[1:])
    acc = tuple(float(r[1]) for r in rows[1:])
    per_class = None
    if class_names:
        per_class = {
            name: tuple(float(r[2 + j]) for r in rows[1:]) for j, name in enumerate(class_names)
        }
    return AccuracyCurve(snr_db=snr, accuracy=acc, per_class=per_class)


def read_predictions_csv(path):
    """Parse an ``index,true,pred,snr_db`` predictions file into numpy arrays."""
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    if not rows or rows[0] != ["index", "true", "pred", "snr_db"]:
        raise ValueError(f"{path}: not a predictions CSV")
    body = rows[1:]
    true = np.array([int(r[1]) for r in body], dtype=np.int64)
    pred = np.array([int(r[2]) for r in body], dtype=np.int64)
    snr = np.array([float(r[3]) for r in body], dtype=np.float64)
    return true, pred, snr


def merge_curves(curves: list[AccuracyCurve], names: list[str], interpolate: str = "never"):
    """Align curves into (grid, {name: accuracies}) for side-by-side reports.

    With ``interpolate='never'`` all grids must match exactly; with ``'linear'``
    each curve is linearly interpolated onto the overlapping union grid.
    """
    if len(curves) != len(names):
        raise ValueError("one name per curve required")
    if not curves:
        raise ValueError("nothing to merge")

    grids = [np.asarray(c.snr_db) for c in curves]
    if interpolate == "never":
        for g in grids[1:]:
            if not np.array_equal(g, grids[0]):
                raise GridMismatchError(
                    "curves use different SNR grids; pass --interpolate=linear to align them"
                )
        grid = grids[0]
        columns = {n: np.asarray(c.accuracy) for n, c in zip(names, curves)}
    elif interpolate == "linear":
        lo = max(g.min() for g in grids)
        hi = min(g.max() for g in grids)
        if lo > hi:
            raise GridMismatchError("curves have no overlapping SNR range")
        grid = np.unique(np.concatenate(grids))
        grid = grid[(grid >= lo) & (grid <= hi)]
        columns = {
            n: np.interp(grid, g, np.asarray(c.accuracy))
            for n, g, c in zip(names, grids, curves)
        }
    else:
        raise ValueError(f"unknown interpolate mode {interpolate!r}")
    return grid, columns


def export_merged_csv(grid, columns: dict, path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["snr_db"] + list(columns))
        for i, s in enumerate(grid):
            writer.writerow([f"{float(s):.6f}"] + [f"{columns[n][i]:.6f}" for n in columns])
