"""Alphabet construction, point ordering, and index-to-symbol mapping."""

import hashlib

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mixamc.constellations import InvalidSymbolError, Scheme, constellation, modulate

# Point orderings are part of the file-format contract; these digests pin them.
POINT_DIGESTS = {
    Scheme.BPSK: "f22632020555098d523f7f407516ba415cf32b8192c8759925bc03e305be5f56",
    Scheme.QAM4: "78e1e898583b5f5a3dcdbdd3b6cae4133c319956c415994583058031f950d1b6",
    Scheme.PSK8: "12ac57ff2db4eec674973f6f8be1369e64e25fd0e20b6c6241d3cd6eb6a38162",
    Scheme.QAM16: "fadc5967faf0cb3c51e73103d8a453da1358cbf554a72c7a2d2cbdfc3be31a8b",
}


class TestSchemeCodes:
    def test_exactly_four_members_with_stable_codes(self):
        assert [s.value for s in Scheme] == [0, 1, 2, 3]
        assert [s.name for s in Scheme] == ["BPSK", "QAM4", "PSK8", "QAM16"]

    def test_orders(self):
        assert {s: s.order for s in Scheme} == {
            Scheme.BPSK: 2,
            Scheme.QAM4: 4,
            Scheme.PSK8: 8,
            Scheme.QAM16: 16,
        }


class TestPointTables:
    @pytest.mark.parametrize("scheme", list(Scheme))
    def test_unit_average_power(self, scheme):
        assert abs(constellation(scheme).mean_power() - 1.0) < 1e-12

    @pytest.mark.parametrize("scheme", list(Scheme))
    def test_points_pairwise_distinct(self, scheme):
        pts = constellation(scheme).points
        dist = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(dist, np.inf)
        assert dist.min() > 0

    def test_bpsk_points(self):
        assert np.array_equal(constellation(Scheme.BPSK).points, [1.0 + 0j, -1.0 + 0j])

    def test_qam4_is_scaled_unit_square(self):
        pts = constellation(Scheme.QAM4).points
        # oracle: direct average of |s|^2 over the four corner points
        assert abs(np.mean(np.abs(pts) ** 2) - 1.0) < 1e-12
        expected = np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]) / np.sqrt(2)
        np.testing.assert_allclose(pts, expected, atol=1e-15)

    def test_psk8_counterclockwise_from_zero(self):
        pts = constellation(Scheme.PSK8).points
        # oracle: evaluate exp(j*2*pi*k/8) directly
        np.testing.assert_allclose(pts, np.exp(2j * np.pi * np.arange(8) / 8), atol=1e-15)
        steps = np.angle(pts[1:] / pts[:-1])
        np.testing.assert_allclose(steps, np.pi / 4, atol=1e-15)

    def test_qam16_grid_scale(self):
        # oracle: the average of a^2 + b^2 over the {-3,-1,1,3}^2 grid is 10,
        # so unit power requires scaling by 1/sqrt(10)
        levels = (-3, -1, 1, 3)
        grid = [complex(a, b) for a in levels for b in levels]
        assert sum(a * a + b * b for a in levels for b in levels) / 16 == 10.0
        pts = constellation(Scheme.QAM16).points
        np.testing.assert_allclose(pts, np.array(grid) / np.sqrt(10), atol=1e-15)
        assert abs(np.mean(np.abs(pts) ** 2) - 1.0) < 1e-12

    @pytest.mark.parametrize("scheme", list(Scheme))
    def test_point_ordering_regression(self, scheme):
        digest = hashlib.sha256(constellation(scheme).points.tobytes()).hexdigest()
        assert digest == POINT_DIGESTS[scheme]


class TestModulate:
    def test_bpsk_sequence(self):
        np.testing.assert_array_equal(
            modulate(Scheme.BPSK, [0, 1, 0]), [1.0 + 0j, -1.0 + 0j, 1.0 + 0j]
        )

    def test_repeated_point(self):
        pts = constellation(Scheme.QAM4).points
        np.testing.assert_array_equal(modulate(Scheme.QAM4, [0, 0]), [pts[0], pts[0]])

    def test_psk8_full_sweep(self):
        out = modulate(Scheme.PSK8, list(range(8)))
        np.testing.assert_allclose(np.abs(out), 1.0, atol=1e-15)
        np.testing.assert_allclose(out, np.exp(2j * np.pi * np.arange(8) / 8), atol=1e-15)

    @pytest.mark.parametrize("bad", [[-1], [2], [0, 1, 2]])
    def test_out_of_range_index_rejected(self, bad):
        with pytest.raises(InvalidSymbolError):
            modulate(Scheme.BPSK, bad)

    @given(
        scheme=st.sampled_from(list(Scheme)),
        data=st.data(),
    )
    def test_total_and_length_preserving(self, scheme, data):
        n = data.draw(st.integers(min_value=0, max_value=64))
        idx = data.draw(st.lists(st.integers(0, scheme.order - 1), min_size=n, max_size=n))
        out = modulate(scheme, idx)
        assert out.shape == (n,)
        assert np.all(np.isin(out, constellation(scheme).points))
