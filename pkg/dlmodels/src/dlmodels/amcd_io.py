"""Reader for AMCD dataset files (the wire contract with the generator).

Layout, little-endian: magic ``AMCD``, version u16, header length u32, UTF-8
JSON header, then one record per example
``[class u16][snr_db f32][ratio f32][2L f32: real row, imag row]``, and a
trailing CRC-32 over the records. Training files are class-major with the
last 10% of each class block reserved for validation.
"""

from __future__ import annotations

import json
import struct
import zlib
from dataclasses import dataclass

import numpy as np

MAGIC = b"AMCD"
SUPPORTED_VERSION = 1
SCHEME_NAMES = ("BPSK", "QAM4", "PSK8", "QAM16")

_PREFIX = struct.Struct("<4sHI")


class AmcdReadError(Exception):
    """The file is not a readable AMCD dataset."""


def class_name(descriptor: dict) -> str:
    if "single" in descriptor:
        return SCHEME_NAMES[descriptor["single"]]
    return f"{SCHEME_NAMES[descriptor['strong']]}+{SCHEME_NAMES[descriptor['weak']]}"


@dataclass
class AmcdFile:
    """One loaded dataset: examples, labels, and the parsed JSON header."""

    header: dict
    x: np.ndarray  # (N, 2, L, 1) float32
    y: np.ndarray  # (N,) int64
    snr_db: np.ndarray
    ratio: np.ndarray

    def __len__(self) -> int:
        return len(self.y)

    @property
    def L(self) -> int:
        return self.header["L"]

    @property
    def labelset_name(self) -> str:
        return self.header["labelset"]["name"]

    @property
    def class_descriptors(self) -> list[dict]:
        return self.header["labelset"]["classes"]

    @property
    def n_classes(self) -> int:
        return len(self.class_descriptors)

    @property
    def class_names(self) -> list[str]:
        return [class_name(c) for c in self.class_descriptors]

    def train_val_indices(self) -> tuple[np.ndarray, np.ndarray]:
        """Train/validation index arrays per the class-major split in the header."""
        split = self.header["split"]
        if split.get("kind") != "train":
            raise ValueError("this file has no train/validation split")
        n, n_train = split["n_per_class"], split["train_per_class"]
        train, val = [], []
        for c in range(self.n_classes):
            start = c * n
            train.append(np.arange(start, start + n_train))
            val.append(np.arange(start + n_train, start + n))
        return np.concatenate(train), np.concatenate(val)


def read_amcd(path) -> AmcdFile:
    with open(path, "rb") as f:
        blob = f.read()
    if len(blob) < _PREFIX.size:
        raise AmcdReadError(f"{path}: shorter than the fixed prefix")
    magic, version, header_len = _PREFIX.unpack_from(blob)
    if magic != MAGIC:
        raise AmcdReadError(f"{path}: bad magic {magic!r}")
    if version != SUPPORTED_VERSION:
        raise AmcdReadError(f"{path}: unsupported format version {version}")

    header_end = _PREFIX.size + header_len
    if len(blob) < header_end + 4:
        raise AmcdReadError(f"{path}: truncated header")
    header = json.loads(blob[_PREFIX.size:header_end].decode("utf-8"))

    L, n = header["L"], header["n_examples"]
    rec = np.dtype([("y", "<u2"), ("snr", "<f4"), ("ratio", "<f4"), ("iq", "<f4", (2 * L,))])
    expected = header_end + n * rec.itemsize + 4
    if len(blob) != expected:
        raise AmcdReadError(f"{path}: expected {expected} bytes, found {len(blob)}")
    payload = blob[header_end:expected - 4]
    (crc,) = struct.unpack_from("<I", blob, expected - 4)
    if zlib.crc32(payload) != crc:
        raise AmcdReadError(f"{path}: payload CRC mismatch")

    records = np.frombuffer(payload, dtype=rec)
    x = np.empty((n, 2, L, 1), dtype=np.float32)
    x[:, 0, :, 0] = records["iq"][:, :L]
    x[:, 1, :, 0] = records["iq"][:, L:]
    return AmcdFile(
        header=header,
        x=x,
        y=records["y"].astype(np.int64),
        snr_db=records["snr"].astype(np.float64),
        ratio=records["ratio"].astype(np.float64),
    )
