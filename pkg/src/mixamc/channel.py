"""Symbol-rate channel model: deterministic impairments, power-split mixing, AWGN.

The received sequence for a single signal is
``r(n) = exp(j*(2*pi*f0T*n + theta_n)) * s(n) * h(n) + g(n)``
and a two-signal co-channel mixture is
``r(n) = sqrt(E_s)*a(n) + sqrt(E_w)*b(n) + g(n)`` with ``E_s + E_w = 1``.
The default channel is the identity (f0T=0, theta=0, h=1), which is what all
shipped experiments use; non-default channels are supported but not exercised
by the benchmark protocol.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mixamc.constellations import Scheme


class DegenerateChannelError(ValueError):
    """The channel response contains a zero coefficient."""


@dataclass(frozen=True)
class ChannelParams:
    """Deterministic per-symbol impairments.

    ``theta`` and ``h`` may be scalars or length-L arrays. ``epsilon`` (timing
    offset in symbols) is carried for provenance but has no effect at symbol
    rate; the discrete model absorbs it into ``h``.
    """

    f0T: float = 0.0
    theta: np.ndarray | float = 0.0
    h: np.ndarray | complex = 1.0 + 0.0j
    epsilon: float = 0.0

    def is_identity(self) -> bool:
        return (
            self.f0T == 0.0
            and np.all(np.asarray(self.theta) == 0.0)
            and np.all(np.asarray(self.h) == 1.0 + 0.0j)
        )


@dataclass(frozen=True)
class MixSpec:
    """Ordered (strong, weak) scheme pair with strong:weak power ratio k:1.

    Component powers are derived under total-power normalization:
    ``e_strong = k/(k+1)``, ``e_weak = 1/(k+1)``, summing to exactly 1.0.
    """

    strong: Scheme
    weak: Scheme
    ratio: float

    def __post_init__(self) -> None:
        if self.ratio <= 0:
            raise ValueError(f"power ratio must be positive, got {self.ratio}")
        if self.strong == self.weak:
            raise ValueError("mixed pairs must use two distinct schemes")
        if self.e_strong + self.e_weak != 1.0:
            raise ValueError(f"power split for ratio {self.ratio} does not normalize exactly")

    @property
    def e_strong(self) -> float:
        return self.ratio / (self.ratio + 1.0)

    @property
    def e_weak(self) -> float:
        return 1.0 / (self.ratio + 1.0)


def apply_channel(seq: np.ndarray, params: ChannelParams) -> np.ndarray:
    """Apply frequency offset, phase jitter, and channel response to ``seq``."""
    seq = np.asarray(seq, dtype=np.complex128)
    h = np.broadcast_to(np.asarray(params.h, dtype=np.complex128), seq.shape)
    if np.any(h == 0):
        raise DegenerateChannelError("channel response has a zero coefficient")
    if params.is_identity():
        return seq.copy()
    n = np.arange(seq.shape[-1])
    theta = np.broadcast_to(np.asarray(params.theta, dtype=np.float64), seq.shape)
    rotation = np.exp(1j * (2.0 * np.pi * params.f0T * n + theta))
    return rotation * seq * h


def mix(a: np.ndarray, b: np.ndarray, spec: MixSpec) -> np.ndarray:
    """Superpose two unit-power sequences as sqrt(E_s)*a + sqrt(E_w)*b."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError(f"sequence shapes differ: {a.shape} vs {b.shape}")
    return np.sqrt(spec.e_strong) * a + np.sqrt(spec.e_weak) * b


def noise_variance(snr_db: float) -> float:
    """Total complex noise variance for a given SNR against unit signal power."""
    return 10.0 ** (-snr_db / 10.0)


def add_awgn(seq: np.ndarray, snr_db: float, rng: np.random.Generator) -> np.ndarray:
    """Add circularly symmetric complex Gaussian noise of variance 10**(-snr_db/10).

    The SNR is defined against the total (post-mix) signal power, which the
    constellation and mixing contracts pin to 1. Each real dimension gets
    variance sigma2/2. Draw order is fixed: one (L, 2) standard-normal block.
    """
    seq = np.asarray(seq, dtype=np.complex128)
    sigma2 = noise_variance(snr_db)
    z = rng.standard_normal((seq.shape[-1], 2))
    noise = np.sqrt(sigma2 / 2.0) * (z[..., 0] + 1j * z[..., 1])
    return seq + noise


def preprocess(seq: np.ndarray) -> np.ndarray:
    """Stack real and imaginary parts into a (2, L, 1) real array (real row first)."""
    seq = np.asarray(seq)
    return np.stack([seq.real, seq.imag])[..., np.newaxis]


def reconstruct(arr: np.ndarray) -> np.ndarray:
    """Inverse of preprocess: (2, L, 1) real array back to a complex sequence."""
    arr = np.asarray(arr)
    if arr.ndim != 3 or arr.shape[0] != 2 or arr.shape[2] != 1:
        raise ValueError(f"expected shape (2, L, 1), got {arr.shape}")
    return arr[0, :, 0] + 1j * arr[1, :, 0]
