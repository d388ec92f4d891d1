#!/usr/bin/env python3
"""Generate the Monte Carlo AMCD files for one benchmark study.

Defaults follow the full protocol: 60000 training sequences per class with
per-sequence SNR uniform on [-10, 20] dB (last 10% of each class reserved for
validation) and a test set of 1000 sequences per class per SNR on the
-10..20:2 grid. Use --n-sample to run the training-set-size studies
(5000/10000/60000/120000) and --fixed-snr for the fixed-SNR training study.
"""

import argparse
from pathlib import Path

from mixamc.cli import main as mixamc_main


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--labelset", default="omega6", help="label set family (default omega6)")
    parser.add_argument("--ratio", default="2", help="power ratio (number or 'random')")
    parser.add_argument("--n-sample", type=int, default=60000, help="training sequences per class")
    parser.add_argument("--fixed-snr", type=float, default=None,
                        help="train at one fixed SNR instead of uniform [-10, 20] dB")
    parser.add_argument("--seed", type=int, default=7, help="master seed")
    parser.add_argument("--out-dir", default="data", help="output directory")
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    snr = f"{args.fixed_snr:g}..{args.fixed_snr:g}" if args.fixed_snr is not None else "-10..20"
    tag = args.labelset if args.ratio is None else f"{args.labelset}-r{args.ratio}"
    suffix = f"_n{args.n_sample}" + (f"_snr{args.fixed_snr:g}" if args.fixed_snr is not None else "")

    argv = ["gen", "--labelset", args.labelset, "--n-sample", str(args.n_sample),
            "--snr", snr, "--seed", str(args.seed),
            "--out", str(out_dir / f"{tag}{suffix}_train.amcd"),
            "--test-out", str(out_dir / f"{tag}_test.amcd")]
    if args.labelset in ("omega6", "omega12"):
        argv += ["--ratio", args.ratio]
    raise SystemExit(mixamc_main(argv))


if __name__ == "__main__":
    main()
