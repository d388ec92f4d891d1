"""Modulation alphabets (BPSK, 4QAM, 8PSK, 16QAM) and index-to-point mapping.

All alphabets have unit average power so that SNR bookkeeping stays exact.
Point tables are built from square roots only (never transcendental calls),
which keeps the bytes identical across platforms and numpy versions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class InvalidSymbolError(ValueError):
    """A symbol index is outside the alphabet of the requested scheme."""


class Scheme(enum.IntEnum):
    """Modulation schemes with the stable integer codes used in labels and files."""

    BPSK = 0
    QAM4 = 1
    PSK8 = 2
    QAM16 = 3

    @property
    def order(self) -> int:
        return _ORDERS[self]


_ORDERS = {Scheme.BPSK: 2, Scheme.QAM4: 4, Scheme.PSK8: 8, Scheme.QAM16: 16}

_SQRT_HALF = np.sqrt(0.5)
_QAM16_SCALE = 1.0 / np.sqrt(10.0)


def _bpsk_points() -> np.ndarray:
    return np.array([1.0, -1.0], dtype=np.complex128)


def _qam4_points() -> np.ndarray:
    # Counterclockwise from 45 degrees; adjacent points differ in one bit.
    return _SQRT_HALF * np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j], dtype=np.complex128)


def _psk8_points() -> np.ndarray:
    # Counterclockwise from angle 0 in steps of pi/4.
    s = _SQRT_HALF
    return np.array(
        [1, s + s * 1j, 1j, -s + s * 1j, -1, -s - s * 1j, -1j, s - s * 1j],
        dtype=np.complex128,
    )


def _qam16_points() -> np.ndarray:
    # Row-major over the {-3,-1,1,3}^2 grid: real part outer, imaginary inner.
    levels = (-3.0, -1.0, 1.0, 3.0)
    pts = [complex(a, b) for a in levels for b in levels]
    return _QAM16_SCALE * np.array(pts, dtype=np.complex128)


@dataclass(frozen=True)
class Constellation:
    """An ordered, unit-average-power alphabet for one scheme."""

    scheme: Scheme
    points: np.ndarray

    @property
    def order(self) -> int:
        return len(self.points)

    def mean_power(self) -> float:
        return float(np.mean(np.abs(self.points) ** 2))


_TABLES = {
    Scheme.BPSK: _bpsk_points(),
    Scheme.QAM4: _qam4_points(),
    Scheme.PSK8: _psk8_points(),
    Scheme.QAM16: _qam16_points(),
}
for _scheme, _pts in _TABLES.items():
    _pts.setflags(write=False)


def constellation(scheme: Scheme) -> Constellation:
    """Canonical alphabet for ``scheme`` with the documented point ordering."""
    scheme = Scheme(scheme)
    return Constellation(scheme=scheme, points=_TABLES[scheme])


def modulate(scheme: Scheme, indices) -> np.ndarray:
    """Map symbol indices to constellation points.

    Returns a complex128 array of the same length as ``indices``.
    Raises InvalidSymbolError for indices outside [0, order).
    """
    const = constellation(scheme)
    idx = np.asarray(indices, dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= const.order):
        raise InvalidSymbolError(
            f"symbol indices for {const.scheme.name} must lie in [0, {const.order})"
        )
    return const.points[idx]
