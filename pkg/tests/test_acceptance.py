"""Acceptance gate: one test per release criterion, each printing PASS on success.

Run with ``pytest tests/test_acceptance.py -v -s``. The mixed-signal bound
criterion generates and classifies 96k sequences, so the full module takes a
couple of minutes.
"""

import math
import time

import numpy as np
import pytest

from mixamc import amcd
from mixamc.alrt import AlrtConfig, evaluate_bound, hypotheses_for, log_likelihood
from mixamc.channel import MixSpec, add_awgn, noise_variance
from mixamc.cli import main
from mixamc.constellations import Scheme, constellation, modulate
from mixamc.labelsets import omega4, omega6_ratio
from mixamc.rng import child_rng
from tests.test_alrt import brute_log_likelihood, random_instance


def _report(name: str) -> None:
    print(f"[acceptance] {name}: PASS")


def test_constellation_normalization():
    """All four alphabets have mean power within 1e-12 of 1."""
    for scheme in Scheme:
        pts = constellation(scheme).points
        assert abs(np.mean(np.abs(pts) ** 2) - 1.0) < 1e-12
    _report("constellation normalization (|mean power - 1| < 1e-12)")


def test_snr_calibration_within_tenth_db():
    """Empirical SNR over 1e6 samples within +/-0.1 dB at -10, 0, 10, 20 dB; < 10 s."""
    n = 1_000_000
    start = time.perf_counter()
    for i, snr_db in enumerate((-10.0, 0.0, 10.0, 20.0)):
        rng = child_rng(90, i)
        s = modulate(Scheme.QAM4, rng.integers(0, 4, n))
        r = add_awgn(s, snr_db, rng)
        emp = 10 * np.log10(np.mean(np.abs(s) ** 2) / np.mean(np.abs(r - s) ** 2))
        assert abs(emp - snr_db) < 0.1, f"{snr_db} dB measured as {emp:.4f} dB"
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"calibration took {elapsed:.1f} s"
    _report(f"SNR calibration +/-0.1 dB at 4 levels ({elapsed:.1f} s)")


def test_power_allocation_exact():
    """Ratios {1,2,5,8}:1 give the exact normalized (E_s, E_w) pairs."""
    expected = {1: (0.5, 0.5), 2: (2 / 3, 1 / 3), 5: (5 / 6, 1 / 6), 8: (8 / 9, 1 / 9)}
    for ratio, (es, ew) in expected.items():
        spec = MixSpec(Scheme.BPSK, Scheme.QAM4, ratio)
        assert spec.e_strong == es and spec.e_weak == ew
        assert spec.e_strong + spec.e_weak == 1.0
    _report("power allocation exact for ratios {1,2,5,8}:1")


def test_alrt_oracle_equivalence_1000_instances():
    """Stabilized log-likelihood matches the linear-domain oracle to rel 1e-9."""
    rng = child_rng(4096, 0)
    worst = 0.0
    for _ in range(1000):
        r, hyp, cfg = random_instance(rng, L_max=10)
        fast = log_likelihood(r, hyp, cfg)
        brute = brute_log_likelihood(r, hyp.points, cfg.sigma2)
        rel = abs(fast - brute) / abs(brute)
        worst = max(worst, rel)
        assert rel < 1e-9
    _report(f"ALRT oracle equivalence on 1000 instances (worst rel err {worst:.2e})")


def test_alrt_single_signal_bound():
    """Omega4 bound: >= 99% at every grid point >= 10 dB, >= 99.9% at 40 dB."""
    grid = [10.0, 12.0, 14.0, 16.0, 18.0, 20.0]
    curve = evaluate_bound(omega4(), snr_grid=grid, n_per_class=1000, master_seed=101)
    for snr, acc in zip(curve.snr_db, curve.accuracy):
        assert acc >= 0.99, f"accuracy {acc:.4f} at {snr} dB"
    high = evaluate_bound(omega4(), snr_grid=[40.0], n_per_class=1000, master_seed=102)
    assert high.accuracy[0] >= 0.999, f"accuracy {high.accuracy[0]:.4f} at 40 dB"
    _report(
        "ALRT single-signal bound (>=99% for SNR>=10 dB, "
        f">=99.9% at 40 dB: {high.accuracy[0]:.4f})"
    )


@pytest.fixture(scope="module")
def omega6_r2_curve():
    return evaluate_bound(
        omega6_ratio(2), snr_grid=[float(s) for s in range(-10, 21, 2)],
        n_per_class=1000, master_seed=103,
    )


def test_mixed_signal_chance_floor(omega6_r2_curve):
    """Omega6 ratio-2 bound starts at the 1/6 chance floor at -10 dB."""
    acc = omega6_r2_curve.accuracy[0]
    assert omega6_r2_curve.snr_db[0] == -10.0
    assert abs(acc - 1 / 6) <= 0.05, f"-10 dB accuracy {acc:.4f} not within 1/6 +/- 0.05"
    _report(f"mixed-signal chance floor at -10 dB (accuracy {acc:.4f})")


def test_mixed_signal_curve_monotone(omega6_r2_curve):
    """The ratio-2 bound is non-decreasing in SNR within 2 points of slack."""
    acc = omega6_r2_curve.accuracy
    for i in range(len(acc) - 1):
        assert acc[i + 1] >= acc[i] - 0.02, (
            f"accuracy drops from {acc[i]:.4f} to {acc[i + 1]:.4f} "
            f"between {omega6_r2_curve.snr_db[i]} and {omega6_r2_curve.snr_db[i + 1]} dB"
        )
    _report("mixed-signal bound non-decreasing in SNR (2-point slack)")


def test_cli_determinism(tmp_path):
    """Identical CLI invocations produce byte-identical AMCD files and CSVs."""
    gen_args = [
        "gen", "--labelset", "omega6", "--ratio", "2", "--n-sample", "20",
        "--snr", "-10..20", "--seed", "42", "--test-grid", "-10..20:10", "--n-test", "5",
    ]
    for tag in ("x", "y"):
        rc = main(gen_args + [
            "--out", str(tmp_path / f"{tag}.amcd"),
            "--test-out", str(tmp_path / f"{tag}t.amcd"),
        ])
        assert rc == 0
    assert (tmp_path / "x.amcd").read_bytes() == (tmp_path / "y.amcd").read_bytes()
    assert (tmp_path / "xt.amcd").read_bytes() == (tmp_path / "yt.amcd").read_bytes()

    alrt_args = [
        "alrt", "--labelset", "omega4", "--grid", "-10..20:10", "--n", "20", "--seed", "42",
    ]
    for tag in ("r1", "r2"):
        assert main(alrt_args + ["--out-dir", str(tmp_path / tag)]) == 0
    for name in ("omega4_alrt_curve.csv", "omega4_alrt_confusion_20.csv"):
        a = (tmp_path / "r1" / name).read_bytes()
        b = (tmp_path / "r2" / name).read_bytes()
        assert a == b
    # the AMCD bytes double as a cross-run regression fixture
    digest = __import__("hashlib").sha256((tmp_path / "x.amcd").read_bytes()).hexdigest()
    assert amcd.load(tmp_path / "x.amcd").provenance["seed"] == 42
    print(f"[acceptance] CLI determinism (train file sha256={digest[:16]}...): PASS")
