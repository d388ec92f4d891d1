"""Label-set definitions, Monte Carlo generation, and the AMCD file format."""

import numpy as np
import pytest

from mixamc import amcd
from mixamc.amcd import BadMagicError, ChecksumError, TruncatedError, VersionError
from mixamc.channel import mix, noise_variance
from mixamc.constellations import Scheme, modulate
from mixamc.dataset import gen_test, gen_training
from mixamc.labelsets import (
    MixedClass,
    SingleClass,
    labelset_by_name,
    omega4,
    omega6_equal,
    omega6_random,
    omega6_ratio,
    omega12_ratio,
)
from mixamc.rng import child_rng


class TestLabelSets:
    def test_omega4_is_the_four_singles(self):
        ls = omega4()
        assert ls.name == "omega4"
        assert ls.classes == tuple(SingleClass(s) for s in Scheme)

    def test_omega6_equal_unordered_pairs(self):
        ls = omega6_equal()
        assert ls.class_names == (
            "BPSK+QAM4",
            "BPSK+PSK8",
            "BPSK+QAM16",
            "QAM4+PSK8",
            "QAM4+QAM16",
            "PSK8+QAM16",
        )
        assert all(isinstance(c, MixedClass) and c.ratio == 1.0 for c in ls.classes)

    def test_omega6_ratio_ordered_pairs_lexicographic(self):
        ls = omega6_ratio(2)
        assert ls.name == "omega6-r2"
        assert [(c.strong, c.weak) for c in ls.classes] == [
            (Scheme.BPSK, Scheme.QAM4),
            (Scheme.BPSK, Scheme.PSK8),
            (Scheme.QAM4, Scheme.BPSK),
            (Scheme.QAM4, Scheme.PSK8),
            (Scheme.PSK8, Scheme.BPSK),
            (Scheme.PSK8, Scheme.QAM4),
        ]

    def test_omega12_covers_all_ordered_pairs(self):
        ls = omega12_ratio(2)
        assert len(ls) == 12
        assert len(set(ls.class_names)) == 12

    def test_omega6_random_flag(self):
        assert omega6_random().random_ratio
        assert not omega6_ratio(5).random_ratio
        assert not omega4().random_ratio

    @pytest.mark.parametrize(
        "name", ["omega4", "omega6-equal", "omega6-r2", "omega6-r5", "omega12-r8", "omega6-random"]
    )
    def test_by_name_round_trip(self, name):
        ls = labelset_by_name(name)
        assert ls.name == name
        assert labelset_by_name(ls.name) == ls
        assert ls.from_dict(ls.to_dict()) == ls

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            labelset_by_name("omega5")


class TestGenTraining:
    def test_counts_and_split(self):
        ds = gen_training(omega4(), 600, -10, 20, master_seed=5, L=16)
        assert len(ds) == 2400
        assert ds.split == {
            "kind": "train",
            "n_per_class": 600,
            "train_per_class": 540,
            "val_per_class": 60,
        }
        assert len(ds.train_indices()) == 2160
        assert len(ds.val_indices()) == 240
        # the validation block is the tail of each class block
        assert np.array_equal(ds.val_indices()[:60], np.arange(540, 600))
        np.testing.assert_array_equal(np.bincount(ds.y), [600] * 4)

    def test_degenerate_snr_interval(self):
        ds = gen_training(omega6_ratio(2), 10, 0, 0, master_seed=3, L=8)
        assert len(ds) == 60
        assert np.all(ds.snr_db == 0.0)
        assert np.all(ds.ratio == 2.0)

    def test_snr_uniform_within_bounds(self):
        ds = gen_training(omega4(), 200, -10, 20, master_seed=5, L=4)
        assert ds.snr_db.min() >= -10 and ds.snr_db.max() <= 20
        # spread across the interval, not clumped at one end
        assert np.std(ds.snr_db) > 5

    def test_determinism_same_seed(self, tmp_path):
        a = gen_training(omega6_ratio(2), 12, -5, 5, master_seed=9, L=8)
        b = gen_training(omega6_ratio(2), 12, -5, 5, master_seed=9, L=8)
        assert a.equals(b)
        pa, pb = tmp_path / "a.amcd", tmp_path / "b.amcd"
        amcd.save(a, pa)
        amcd.save(b, pb)
        assert pa.read_bytes() == pb.read_bytes()

    def test_different_seed_differs(self):
        a = gen_training(omega4(), 10, 0, 0, master_seed=1, L=8)
        b = gen_training(omega4(), 10, 0, 0, master_seed=2, L=8)
        assert not np.array_equal(a.x, b.x)

    def test_worker_count_does_not_change_bytes(self, monkeypatch):
        monkeypatch.setenv("MIXAMC_THREADS", "1")
        a = gen_training(omega4(), 30, -10, 20, master_seed=11, L=8)
        monkeypatch.setenv("MIXAMC_THREADS", "4")
        b = gen_training(omega4(), 30, -10, 20, master_seed=11, L=8)
        assert a.equals(b)

    def test_validation_split_needs_ten(self):
        with pytest.raises(ValueError):
            gen_training(omega4(), 9, -10, 20, master_seed=0)

    def test_reversed_bounds_rejected(self):
        with pytest.raises(ValueError):
            gen_training(omega4(), 10, 20, -10, master_seed=0)


class TestGenTest:
    def test_minimal_grid(self):
        ds = gen_test(omega4(), [0.0], n_per_class=1, master_seed=2, L=8)
        assert len(ds) == 4
        np.testing.assert_array_equal(ds.y, [0, 1, 2, 3])

    def test_per_cell_counts_equal(self):
        grid = [-10.0, 0.0, 10.0]
        ds = gen_test(omega6_ratio(2), grid, n_per_class=7, master_seed=2, L=8)
        assert len(ds) == 6 * 3 * 7
        for c in range(6):
            for s in grid:
                assert np.sum((ds.y == c) & (ds.snr_db == s)) == 7

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            gen_test(omega4(), [], n_per_class=1, master_seed=0)

    def test_empirical_snr_of_bucket(self):
        # reconstruct the clean signal from the documented child-stream draw
        # order and measure the injected noise power against nominal
        ls = omega6_ratio(2)
        snr_nominal = 10.0
        ds = gen_test(ls, [snr_nominal], n_per_class=1000, master_seed=77, L=100)
        cls = ls.classes[3]
        idx = np.where(ds.y == 3)[0]
        noise_power = []
        for j, i in enumerate(idx):
            rng = child_rng(77, 1, 3, 0, j)
            a = modulate(cls.strong, rng.integers(0, cls.strong.order, 100))
            b = modulate(cls.weak, rng.integers(0, cls.weak.order, 100))
            clean = mix(a, b, cls.spec())
            received = ds.x[i, 0, :, 0] + 1j * ds.x[i, 1, :, 0]
            noise_power.append(np.mean(np.abs(received - clean) ** 2))
        emp_snr = 10 * np.log10(1.0 / np.mean(noise_power))
        assert abs(emp_snr - snr_nominal) < 0.15

    def test_random_ratio_frequencies(self):
        # ~1e5 ratio draws; each of 1..9 within 2% (relative) of 1/9
        ds = gen_training(omega6_random(), 16667, -10, 20, master_seed=13, L=2)
        ratios = ds.ratio.astype(int)
        counts = np.bincount(ratios, minlength=10)[1:10]
        assert counts.sum() == len(ds)
        freq = counts / len(ds)
        np.testing.assert_allclose(freq, 1 / 9, rtol=0.02)

    def test_random_ratio_stored_per_example(self):
        ds = gen_test(omega6_random(), [5.0], n_per_class=50, master_seed=4, L=8)
        assert set(np.unique(ds.ratio.astype(int))) <= set(range(1, 10))
        assert len(np.unique(ds.ratio)) > 1


class TestAmcdFormat:
    def _small(self):
        return gen_training(omega6_ratio(2), 10, -10, 20, master_seed=21, L=8)

    def test_round_trip(self, tmp_path):
        ds = self._small()
        path = tmp_path / "d.amcd"
        amcd.save(ds, path)
        assert amcd.load(path).equals(ds)

    def test_payload_corruption_detected(self, tmp_path):
        ds = self._small()
        path = tmp_path / "d.amcd"
        amcd.save(ds, path)
        blob = bytearray(path.read_bytes())
        blob[-100] ^= 0xFF
        path.write_bytes(bytes(blob))
        with pytest.raises(ChecksumError):
            amcd.load(path)

    def test_bad_magic(self, tmp_path):
        ds = self._small()
        path = tmp_path / "d.amcd"
        amcd.save(ds, path)
        blob = bytearray(path.read_bytes())
        blob[:4] = b"NOPE"
        path.write_bytes(bytes(blob))
        with pytest.raises(BadMagicError):
            amcd.load(path)

    def test_version_mismatch(self, tmp_path):
        ds = self._small()
        path = tmp_path / "d.amcd"
        amcd.save(ds, path)
        blob = bytearray(path.read_bytes())
        blob[4] = 99
        path.write_bytes(bytes(blob))
        with pytest.raises(VersionError):
            amcd.load(path)

    def test_truncation(self, tmp_path):
        ds = self._small()
        path = tmp_path / "d.amcd"
        amcd.save(ds, path)
        blob = path.read_bytes()
        path.write_bytes(blob[:-37])
        with pytest.raises(TruncatedError):
            amcd.load(path)

    def test_snr_and_ratio_survive_round_trip(self, tmp_path):
        ds = gen_test(omega6_random(), [0.0, 10.0], n_per_class=5, master_seed=8, L=8)
        path = tmp_path / "t.amcd"
        amcd.save(ds, path)
        back = amcd.load(path)
        np.testing.assert_array_equal(back.snr_db, ds.snr_db)
        np.testing.assert_array_equal(back.ratio, ds.ratio)
        assert back.split == ds.split
