"""AMCD: the single-file binary dataset format shared with training components.

Layout (all integers little-endian):

    bytes 0..3    magic ``AMCD``
    bytes 4..5    format version, u16 (currently 1)
    bytes 6..9    header length in bytes, u32
    ...           UTF-8 JSON header (label set, L, counts, split, provenance)
    ...           payload: one fixed-size record per example,
                  [class u16][snr_db f32][ratio f32][2L f32: real row, imag row]
    last 4 bytes  CRC-32 of the payload, u32

The JSON header is serialized with sorted keys so identical datasets produce
identical bytes. ``ratio`` is the strong:weak power ratio used for the
example; single-signal examples store 0.
"""

from __future__ import annotations

import json
import struct
import zlib
from dataclasses import dataclass

import numpy as np

from mixamc.labelsets import LabelSet

MAGIC = b"AMCD"
FORMAT_VERSION = 1
GENERATOR_VERSION = "mixamc-0.1"

_PREFIX = struct.Struct("<4sHI")


class AmcdError(Exception):
    """Base class for AMCD file problems."""


class BadMagicError(AmcdError):
    pass


class VersionError(AmcdError):
    pass


class TruncatedError(AmcdError):
    pass


class ChecksumError(AmcdError):
    pass


@dataclass
class Dataset:
    """In-memory dataset: preprocessed examples plus labels and provenance.

    ``x`` has shape (N, 2, L, 1) float32, ``y``/``snr_db``/``ratio`` are length-N.
    Examples are laid out class-major; test sets additionally group each class
    block by SNR grid point. ``split`` and ``provenance`` round-trip through the
    file header unchanged.
    """

    labelset: LabelSet
    L: int
    x: np.ndarray
    y: np.ndarray
    snr_db: np.ndarray
    ratio: np.ndarray
    split: dict
    provenance: dict

    def __len__(self) -> int:
        return len(self.y)

    def train_indices(self) -> np.ndarray:
        """Indices of the training portion (first 90% of each class block)."""
        return self._split_indices(train=True)

    def val_indices(self) -> np.ndarray:
        """Indices of the validation portion (last 10% of each class block)."""
        return self._split_indices(train=False)

    def _split_indices(self, train: bool) -> np.ndarray:
        if self.split.get("kind") != "train":
            raise ValueError("train/val split is only defined for training datasets")
        n = self.split["n_per_class"]
        n_train = self.split["train_per_class"]
        out = []
        for c in range(len(self.labelset)):
            start = c * n
            if train:
                out.append(np.arange(start, start + n_train))
            else:
                out.append(np.arange(start + n_train, start + n))
        return np.concatenate(out)

    def equals(self, other: "Dataset") -> bool:
        """Field-for-field equality, including provenance."""
        return (
            self.labelset == other.labelset
            and self.L == other.L
            and self.split == other.split
            and self.provenance == other.provenance
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y)
            and np.array_equal(self.snr_db, other.snr_db)
            and np.array_equal(self.ratio, other.ratio)
        )


def _record_dtype(L: int) -> np.dtype:
    return np.dtype([("y", "<u2"), ("snr", "<f4"), ("ratio", "<f4"), ("iq", "<f4", (2 * L,))])


def save(dataset: Dataset, path) -> None:
    """Write ``dataset`` to ``path`` in AMCD format."""
    header = {
        "labelset": dataset.labelset.to_dict(),
        "L": dataset.L,
        "n_examples": len(dataset),
        "split": dataset.split,
        "provenance": dataset.provenance,
    }
    header_bytes = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")

    rec = np.zeros(len(dataset), dtype=_record_dtype(dataset.L))
    rec["y"] = dataset.y
    rec["snr"] = dataset.snr_db
    rec["ratio"] = dataset.ratio
    rec["iq"][:, : dataset.L] = dataset.x[:, 0, :, 0]
    rec["iq"][:, dataset.L :] = dataset.x[:, 1, :, 0]
    payload = rec.tobytes()

    with open(path, "wb") as f:
        f.write(_PREFIX.pack(MAGIC, FORMAT_VERSION, len(header_bytes)))
        f.write(header_bytes)
        f.write(payload)
        f.write(struct.pack("<I", zlib.crc32(payload)))


def load(path) -> Dataset:
    """Read an AMCD file, verifying magic, version, length, and checksum."""
    with open(path, "rb") as f:
        blob = f.read()

    if len(blob) < _PREFIX.size:
        raise TruncatedError(f"{path}: file shorter than the fixed prefix")
    magic, version, header_len = _PREFIX.unpack_from(blob)
    if magic != MAGIC:
        raise BadMagicError(f"{path}: bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise VersionError(f"{path}: format version {version}, expected {FORMAT_VERSION}")
    if len(blob) < _PREFIX.size + header_len + 4:
        raise TruncatedError(f"{path}: header extends past end of file")

    header_end = _PREFIX.size + header_len
    try:
        header = json.loads(blob[_PREFIX.size : header_end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise TruncatedError(f"{path}: unreadable header: {exc}") from exc

    L = header["L"]
    n = header["n_examples"]
    rec_dtype = _record_dtype(L)
    expected = header_end + n * rec_dtype.itemsize + 4
    if len(blob) != expected:
        raise TruncatedError(f"{path}: expected {expected} bytes, found {len(blob)}")

    payload = blob[header_end : header_end + n * rec_dtype.itemsize]
    (crc_stored,) = struct.unpack_from("<I", blob, expected - 4)
    if zlib.crc32(payload) != crc_stored:
        raise ChecksumError(f"{path}: payload CRC mismatch")

    rec = np.frombuffer(payload, dtype=rec_dtype)
    x = np.empty((n, 2, L, 1), dtype=np.float32)
    x[:, 0, :, 0] = rec["iq"][:, :L]
    x[:, 1, :, 0] = rec["iq"][:, L:]
    return Dataset(
        labelset=LabelSet.from_dict(header["labelset"]),
        L=L,
        x=x,
        y=rec["y"].astype(np.uint16),
        snr_db=rec["snr"].astype(np.float32),
        ratio=rec["ratio"].astype(np.float32),
        split=header["split"],
        provenance=header["provenance"],
    )
