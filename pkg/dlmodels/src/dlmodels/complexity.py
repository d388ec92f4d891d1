"""Parameter counts and forward-pass FLOP estimates for the model zoo.

Counting conventions (documented because published tables rarely state
theirs): parameters are Keras totals, i.e. trainable weights plus batch-norm
moving statistics; FLOPs count 2x the multiply-accumulates of convolutions,
dense layers, and recurrent gate matmuls per forward pass, ignoring biases,
activations, pooling, and normalization. Model size assumes float32.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import keras
from keras import layers

from dlmodels.archs import ARCH_NAMES, build

# published reference counts, for side-by-side reporting
PUBLISHED_PARAMS = {
    "cnn-mixed": 42554,
    "resnet34": 22683270,
    "lstm": 231670,
    "cldnn": 1915194,
}


@dataclass(frozen=True)
class ComplexityRow:
    name: str
    params: int
    flops: int
    size_mb: float
    published_params: int | None = None

    @property
    def params_deviation(self) -> float | None:
        if self.published_params is None:
            return None
        return self.params / self.published_params - 1.0


def _layer_flops(layer) -> int:
    if isinstance(layer, layers.Conv2D):
        kh, kw, cin, cout = layer.kernel.shape
        _, oh, ow, _ = layer.output.shape
        return 2 * int(kh * kw * cin * cout * oh * ow)
    if isinstance(layer, layers.Dense):
        cin, cout = layer.kernel.shape
        lead = layer.output.shape[1:-1]
        reps = math.prod(int(d) for d in lead) if lead else 1
        return 2 * int(cin * cout) * reps
    if isinstance(layer, layers.LSTM):
        _, steps, feat = layer.input.shape
        units = layer.units
        return 2 * int(steps) * 4 * (int(feat) * units + units * units)
    return 0


def estimate_flops(model: keras.Model) -> int:
    """Forward-pass FLOPs for one example under the documented conventions."""
    return sum(_layer_flops(layer) for layer in model.layers)


def complexity_report(models: dict[str, keras.Model] | None = None) -> list[ComplexityRow]:
    """Rows of (name, params, FLOPs, MB) for the given models (default: the zoo)."""
    if models is None:
        models = {name: build(name) for name in ARCH_NAMES}
    rows = []
    for name, model in models.items():
        params = model.count_params()
        rows.append(
            ComplexityRow(
                name=name,
                params=params,
                flops=estimate_flops(model),
                size_mb=params * 4 / 1e6,
                published_params=PUBLISHED_PARAMS.get(name),
            )
        )
    return rows


def format_table(rows: list[ComplexityRow]) -> str:
    lines = [f"{'model':<12} {'params':>10} {'MFLOPs':>8} {'MB':>6}  published  deviation"]
    for r in rows:
        if r.published_params is None:
            tail = f"{'-':>9}  -"
        else:
            tail = f"{r.published_params:>9}  {r.params_deviation:+.1%}"
        lines.append(
            f"{r.name:<12} {r.params:>10} {r.flops / 1e6:>8.1f} {r.size_mb:>6.2f}  {tail}"
        )
    return "\n".join(lines)


def report_to_csv(rows: list[ComplexityRow], path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["model", "params", "flops", "size_mb", "published_params"])
        for r in rows:
            writer.writerow(
                [r.name, r.params, r.flops, f"{r.size_mb:.3f}",
                 "" if r.published_params is None else r.published_params]
            )
