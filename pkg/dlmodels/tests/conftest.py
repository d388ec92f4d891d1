"""Shared fixtures: tiny AMCD files produced through the generator's CLI.

The generator component is exercised only through its public command line, so
these fixtures double as an integration check of the file-format contract.
"""

import os
import subprocess

import pytest

os.environ.setdefault("TF_CPP_MIN_LOG_LEVEL", "3")


def mixamc(*args: str) -> None:
    subprocess.run(["mixamc", *args], check=True, capture_output=True, text=True)


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("amcd")


@pytest.fixture(scope="session")
def tiny_equal_train(data_dir):
    """omega6-equal training file: 30 sequences per class, L=100."""
    path = data_dir / "equal_train.amcd"
    mixamc("gen", "--labelset", "omega6-equal", "--n-sample", "30",
           "--snr", "-10..20", "--seed", "11", "--out", str(path))
    return path


@pytest.fixture(scope="session")
def tiny_equal_test(data_dir):
    """omega6-equal test file: 5 per class at 0 and 20 dB."""
    path = data_dir / "equal_test.amcd"
    mixamc("gen", "--labelset", "omega6-equal", "--seed", "12",
           "--test-out", str(path), "--test-grid", "0..20:20", "--n-test", "5")
    return path


@pytest.fixture(scope="session")
def tiny_ratio_train(data_dir):
    """omega6 ratio-2 training file: 30 sequences per class."""
    path = data_dir / "r2_train.amcd"
    mixamc("gen", "--labelset", "omega6", "--ratio", "2", "--n-sample", "30",
           "--snr", "-10..20", "--seed", "13", "--out", str(path))
    return path


@pytest.fixture(scope="session")
def tiny_single_train(data_dir):
    """omega4 training file: 30 sequences per class."""
    path = data_dir / "single_train.amcd"
    mixamc("gen", "--labelset", "omega4", "--n-sample", "30",
           "--snr", "-10..20", "--seed", "14", "--out", str(path))
    return path
