"""Declarative experiment runner: one key/value run file per training run.

Run files mirror the command-line flags of the generator component:

    # lines starting with # are comments
    arch = cnn-mixed          # cnn-single | cnn-mixed | lstm | cldnn | resnet34 | hierarchical
    train = data/train.amcd
    test = data/test.amcd     # optional; writes predictions + accuracy summary
    out-dir = runs/cnn
    seed = 1
    batch-size = 100          # optional TrainConfig overrides
    learning-rate = 0.0001
    max-epochs = 100
    patience = 10

Outputs land in out-dir: model weights, per-epoch history.csv (per stage for
the hierarchical model), predictions.csv, and params.txt.
"""

from __future__ import annotations

import sys
from pathlib import Path

from dlmodels.amcd_io import read_amcd
from dlmodels.archs import ARCH_NAMES, build, input_layout
from dlmodels.complexity import estimate_flops
from dlmodels.hierarchical import build_hierarchical, train_hierarchical
from dlmodels.training import (
    TrainConfig,
    accuracy_by_snr,
    history_to_csv,
    predict_to_csv,
    train,
)

_CONFIG_KEYS = {
    "arch", "train", "test", "out-dir", "seed",
    "batch-size", "learning-rate", "max-epochs", "patience", "verbose",
}


def parse_runfile(path) -> dict[str, str]:
    """Parse ``key = value`` lines; '#' starts a comment, blank lines ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    for required in ("arch", "train", "out-dir", "seed"):
        if required not in out:
            raise ValueError(f"{path}: missing required key {required!r}")
    return out


def _config_from(raw: dict[str, str]) -> TrainConfig:
    return TrainConfig(
        learning_rate=float(raw.get("learning-rate", 1e-4)),
        batch_size=int(raw.get("batch-size", 100)),
        max_epochs=int(raw.get("max-epochs", 100)),
        patience=int(raw.get("patience", 10)),
        seed=int(raw["seed"]),
        verbose=int(raw.get("verbose", 0)),
    )


def run(runfile) -> Path:
    """Execute one run file; returns the output directory."""
    raw = parse_runfile(runfile)
    arch = raw["arch"]
    if arch not in ARCH_NAMES + ("hierarchical",):
        raise ValueError(f"unknown arch {arch!r}")
    cfg = _config_from(raw)
    out_dir = Path(raw["out-dir"])
    out_dir.mkdir(parents=True, exist_ok=True)

    train_ds = read_amcd(raw["train"])
    if arch == "hierarchical":
        clf = build_hierarchical(train_ds.class_descriptors, L=train_ds.L)
        histories = train_hierarchical(clf, train_ds, cfg)
        for i, history in enumerate(histories):
            history_to_csv(history, out_dir / f"history_stage{i}.csv")
        clf.stage1.save_weights(out_dir / "stage1.weights.h5")
        for s, branch in enumerate(clf.branches):
            branch.save_weights(out_dir / f"branch{s}.weights.h5")
        params = clf.stage1.count_params() + sum(b.count_params() for b in clf.branches)
        (out_dir / "params.txt").write_text(f"hierarchical total params: {params}\n")
        predict = clf.predict
    else:
        model = build(arch, n_classes=train_ds.n_classes, L=train_ds.L)
        layout = input_layout(arch)
        history = train(model, train_ds, cfg, layout=layout)
        history_to_csv(history, out_dir / "history.csv")
        model.save_weights(out_dir / "model.weights.h5")
        (out_dir / "params.txt").write_text(
            f"{arch} params: {model.count_params()}\nflops/example: {estimate_flops(model)}\n"
        )
        predict = None

    if "test" in raw:
        test_ds = read_amcd(raw["test"])
        if arch == "hierarchical":
            preds = predict(test_ds.x)
            with open(out_dir / "predictions.csv", "w", newline="") as f:
                f.write("index,true,pred,snr_db\n")
                for i, (t, p, s) in enumerate(zip(test_ds.y, preds, test_ds.snr_db)):
                    f.write(f"{i},{int(t)},{int(p)},{float(s):g}\n")
        else:
            preds = predict_to_csv(model, test_ds, out_dir / "predictions.csv", layout=layout)
        for snr, acc in sorted(accuracy_by_snr(test_ds.y, preds, test_ds.snr_db).items()):
            print(f"snr={snr:+.1f} dB accuracy={acc:.4f}")
    return out_dir


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 1:
        print("usage: dlmodels-run RUNFILE", file=sys.stderr)
        return 2
    try:
        out_dir = run(argv[0])
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"run complete: {out_dir}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
