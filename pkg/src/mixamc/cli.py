"""Command-line entry points: dataset generation, ALRT evaluation, report merging.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 I/O error.
Every randomized command takes a mandatory --seed; reruns with identical flags
produce byte-identical files. MIXAMC_THREADS caps worker parallelism (0 = auto).
"""

from __future__ import annotations

import argparse
import hashlib
import re
import sys
from pathlib import Path

from mixamc import alrt, amcd, dataset, evaluate, labelsets

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_IO = 4


def _parse_snr_range(text: str) -> tuple[float, float]:
    m = re.fullmatch(r"(-?[0-9.]+)\.\.(-?[0-9.]+)", text)
    if not m:
        raise ValueError(f"expected an SNR range like -10..20, got {text!r}")
    lo, hi = float(m.group(1)), float(m.group(2))
    if lo > hi:
        raise ValueError(f"SNR range is reversed: {text!r}")
    return lo, hi


def _parse_grid(text: str) -> list[float]:
    m = re.fullmatch(r"(-?[0-9.]+)\.\.(-?[0-9.]+):(-?[0-9.]+)", text)
    if not m:
        raise ValueError(f"expected an SNR grid like -10..20:2, got {text!r}")
    lo, hi, step = (float(m.group(i)) for i in (1, 2, 3))
    if step <= 0 or lo > hi:
        raise ValueError(f"bad SNR grid {text!r}")
    n = int(round((hi - lo) / step)) + 1
    grid = [lo + i * step for i in range(n)]
    return [g for g in grid if g <= hi + 1e-9]

def _resolve_labelset(name: str, ratio: str | None) -> labelsets.LabelSet:
    if name in ("omega4", "omega6-equal", "omega6-random"):
        if ratio is not None:
            raise ValueError(f"--ratio does not apply to label set {name}")
        return labelsets.labelset_by_name(name)
    if name in ("omega6", "omega12"):
        if ratio is None:
            raise ValueError(f"label set {name} requires --ratio")
        if ratio == "random":
            if name == "omega12":
                raise ValueError("random ratios are only defined for omega6")
            return labelsets.omega6_random()
        k = float(ratio)
        return labelsets.omega6_ratio(k) if name == "omega6" else labelsets.omega12_ratio(k)
    # canonical names like omega6-r2 resolve directly
    if ratio is not None:
        raise ValueError(f"--ratio conflicts with explicit label set name {name}")
    return labelsets.labelset_by_name(name)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def cmd_gen(args) -> int:
    if args.out is None and args.test_out is None:
        raise ValueError("nothing to do: pass --out and/or --test-out")
    ls = _resolve_labelset(args.labelset, args.ratio)

    if args.out is not None:
        lo, hi = _parse_snr_range(args.snr)
        ds = dataset.gen_training(ls, args.n_sample, lo, hi, args.seed, L=args.length)
        amcd.save(ds, args.out)
        path = Path(args.out)
        print(
            f"wrote {path}: labelset={ls.name} examples={len(ds)} "
            f"train={ds.split['train_per_class'] * len(ls)} "
            f"val={ds.split['val_per_class'] * len(ls)} seed={args.seed} "
            f"sha256={_sha256(path)}"
        )

    if args.test_out is not None:
        grid = _parse_grid(args.test_grid)
        ds = dataset.gen_test(ls, grid, args.n_test, args.seed, L=args.length)
        amcd.save(ds, args.test_out)
        path = Path(args.test_out)
        print(
            f"wrote {path}: labelset={ls.name} examples={len(ds)} "
            f"snr_points={len(grid)} per_class={args.n_test} seed={args.seed} "
            f"sha256={_sha256(path)}"
        )
    return EXIT_OK


def cmd_alrt(args) -> int:
    if args.test is not None:
        ds = amcd.load(args.test)
        ls = ds.labelset
        if args.labelset is not None:
            expected = _resolve_labelset(args.labelset, args.ratio)
            if expected != ls:
                raise ValueError(
                    f"--labelset {expected.name} does not match dataset label set {ls.name}"
                )
    else:
        if args.labelset is None:
            raise ValueError("pass --test FILE or --labelset with generation flags")
        if args.seed is None:
            raise ValueError("--seed is required when generating test data on the fly")
        ls = _resolve_labelset(args.labelset, args.ratio)
        grid = _parse_grid(args.grid)
        ds = dataset.gen_test(ls, grid, args.n, args.seed, L=args.length)

    preds = alrt.predict_dataset(ds)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    curve = evaluate.curve(ds.y, preds, ds.snr_db, ls, per_class=True)
    curve_path = out_dir / evaluate.report_filename(ls.name, "alrt", "curve")
    evaluate.export_curve_csv(curve, curve_path)
    written = [curve_path]

    for snr in curve.snr_db:
        mask = ds.snr_db == snr
        cm = evaluate.confusion(ds.y[mask], preds[mask], ls, snr_db=snr)
        path = out_dir / evaluate.report_filename(ls.name, "alrt", "confusion", snr)
        evaluate.export_matrix_csv(cm, path)
        written.append(path)
    total = evaluate.confusion(ds.y, preds, ls)
    total_path = out_dir / evaluate.report_filename(ls.name, "alrt", "confusion")
    evaluate.export_matrix_csv(total, total_path)
    written.append(total_path)

    for snr, acc in zip(curve.snr_db, curve.accuracy):
        print(f"snr={snr:+.1f} dB accuracy={acc:.4f}")
    print(f"wrote {len(written)} reports to {out_dir}")
    return EXIT_OK


def cmd_report(args) -> int:
    curves = [evaluate.read_curve_csv(p) for p in args.curves]
    if args.names is not None:
        names = args.names.split(",")
        if len(names) != len(curves):
            raise ValueError(f"{len(names)} names for {len(curves)} curves")
    else:
        names = [Path(p).stem for p in args.curves]
    grid, columns = evaluate.merge_curves(curves, names, interpolate=args.interpolate)
    evaluate.export_merged_csv(grid, columns, args.out)
    print(f"wrote {args.out}: {len(grid)} SNR points x {len(columns)} curves")
    return EXIT_OK


# tokens like -10..20:2 must parse as values, not option flags
_LEADING_NEGATIVE = re.compile(r"^-\d")


def _allow_negative_values(parser: argparse.ArgumentParser) -> None:
    parser._negative_number_matcher = _LEADING_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixamc",
        description="Synthesize co-channel modulated datasets and evaluate the ALRT bound.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate AMCD training and/or test datasets")
    gen.add_argument("--labelset", required=True,
                     help="omega4 | omega6-equal | omega6 | omega12 | omega6-random")
    gen.add_argument("--ratio", default=None,
                     help="strong:weak power ratio for omega6/omega12 (number or 'random')")
    gen.add_argument("--n-sample", type=int, default=60000,
                     help="training sequences per class (default 60000)")
    gen.add_argument("--snr", default="-10..20",
                     help="training SNR range in dB, e.g. -10..20 (default)")
    gen.add_argument("--seed", type=int, required=True, help="master seed (mandatory)")
    gen.add_argument("--length", type=int, default=dataset.DEFAULT_L,
                     help="symbols per sequence (default 100)")
    gen.add_argument("--out", default=None, help="training AMCD output path")
    gen.add_argument("--test-out", default=None, help="test AMCD output path")
    gen.add_argument("--test-grid", default="-10..20:2",
                     help="test SNR grid, e.g. -10..20:2 (default)")
    gen.add_argument("--n-test", type=int, default=dataset.DEFAULT_N_PER_CLASS,
                     help="test sequences per (class, SNR) cell (default 1000)")
    gen.set_defaults(func=cmd_gen)
    _allow_negative_values(gen)

    al = sub.add_parser("alrt", help="evaluate the ALRT bound and write CSV reports")
    al.add_argument("--labelset", default=None,
                    help="label set for on-the-fly test generation")
    al.add_argument("--ratio", default=None, help="power ratio (see gen)")
    al.add_argument("--grid", default="-10..20:2", help="SNR grid (default -10..20:2)")
    al.add_argument("--n", type=int, default=dataset.DEFAULT_N_PER_CLASS,
                    help="test sequences per (class, SNR) cell (default 1000)")
    al.add_argument("--seed", type=int, default=None,
                    help="master seed (required unless --test is given)")
    al.add_argument("--length", type=int, default=dataset.DEFAULT_L,
                    help="symbols per sequence (default 100)")
    al.add_argument("--test", default=None, help="existing AMCD test file to classify")
    al.add_argument("--out-dir", default=".", help="directory for CSV reports")
    al.set_defaults(func=cmd_alrt)
    _allow_negative_values(al)

    rep = sub.add_parser("report", help="merge accuracy curves into one wide CSV")
    rep.add_argument("curves", nargs="+", help="curve CSV files to merge")
    rep.add_argument("--out", required=True, help="merged CSV output path")
    rep.add_argument("--names", default=None, help="comma-separated column names")
    rep.add_argument("--interpolate", choices=("never", "linear"), default="never",
                     help="align mismatched grids by interpolation (default: never)")
    rep.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except evaluate.GridMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except amcd.AmcdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
