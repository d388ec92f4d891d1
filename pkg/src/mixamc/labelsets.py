"""Label sets: the class lists a classifier discriminates between.

Four families are shipped, mirroring the benchmark protocol:

* ``omega4``        -- the four single schemes.
* ``omega6-equal``  -- six unordered equal-power pairs over all four schemes.
* ``omega6-r{k}``   -- six ordered (strong, weak) pairs over {BPSK, QAM4, PSK8}
                       at a fixed power ratio k:1.
* ``omega12-r{k}``  -- twelve ordered pairs over all four schemes at k:1.
* ``omega6-random`` -- the omega6 pair list with the ratio drawn uniformly
                       from {1, ..., 9}:1 for every sequence.

Class order is lexicographic by (strong code, weak code) and is part of the
file format contract.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from mixamc.channel import MixSpec
from mixamc.constellations import Scheme

RANDOM_RATIO_CHOICES = tuple(range(1, 10))


@dataclass(frozen=True)
class SingleClass:
    scheme: Scheme

    @property
    def name(self) -> str:
        return self.scheme.name


@dataclass(frozen=True)
class MixedClass:
    """Ordered (strong, weak) pair; ``ratio`` None means per-sequence random."""

    strong: Scheme
    weak: Scheme
    ratio: float | None

    def __post_init__(self) -> None:
        if self.strong == self.weak:
            raise ValueError("mixed classes must pair two distinct schemes")

    @property
    def name(self) -> str:
        return f"{self.strong.name}+{self.weak.name}"

    def spec(self, ratio: float | None = None) -> MixSpec:
        """MixSpec at the class ratio, or at ``ratio`` for random-ratio classes."""
        k = self.ratio if self.ratio is not None else ratio
        if k is None:
            raise ValueError(f"class {self.name} has a random ratio; one must be supplied")
        return MixSpec(self.strong, self.weak, float(k))


ClassDef = SingleClass | MixedClass


@dataclass(frozen=True)
class LabelSet:
    name: str
    classes: tuple[ClassDef, ...]

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def class_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.classes)

    @property
    def random_ratio(self) -> bool:
        return any(isinstance(c, MixedClass) and c.ratio is None for c in self.classes)

    def to_dict(self) -> dict:
        classes = []
        for c in self.classes:
            if isinstance(c, SingleClass):
                classes.append({"single": int(c.scheme)})
            else:
                classes.append(
                    {"strong": int(c.strong), "weak": int(c.weak), "ratio": c.ratio}
                )
        return {"name": self.name, "classes": classes}

    @staticmethod
    def from_dict(d: dict) -> "LabelSet":
        classes: list[ClassDef] = []
        for c in d["classes"]:
            if "single" in c:
                classes.append(SingleClass(Scheme(c["single"])))
            else:
                classes.append(MixedClass(Scheme(c["strong"]), Scheme(c["weak"]), c["ratio"]))
        return LabelSet(d["name"], tuple(classes))


def _ratio_tag(ratio: float) -> str:
    return f"{ratio:g}"


def omega4() -> LabelSet:
    return LabelSet("omega4", tuple(SingleClass(s) for s in Scheme))


def omega6_equal() -> LabelSet:
    pairs = itertools.combinations(Scheme, 2)
    classes = tuple(MixedClass(a, b, 1.0) for a, b in pairs)
    return LabelSet("omega6-equal", classes)


def _ordered_pairs(schemes) -> tuple[tuple[Scheme, Scheme], ...]:
    return tuple((a, b) for a in schemes for b in schemes if a != b)


def omega6_ratio(ratio: float) -> LabelSet:
    base = (Scheme.BPSK, Scheme.QAM4, Scheme.PSK8)
    classes = tuple(MixedClass(a, b, float(ratio)) for a, b in _ordered_pairs(base))
    return LabelSet(f"omega6-r{_ratio_tag(ratio)}", classes)


def omega12_ratio(ratio: float) -> LabelSet:
    classes = tuple(MixedClass(a, b, float(ratio)) for a, b in _ordered_pairs(tuple(Scheme)))
    return LabelSet(f"omega12-r{_ratio_tag(ratio)}", classes)


def omega6_random() -> LabelSet:
    base = (Scheme.BPSK, Scheme.QAM4, Scheme.PSK8)
    classes = tuple(MixedClass(a, b, None) for a, b in _ordered_pairs(base))
    return LabelSet("omega6-random", classes)


def labelset_by_name(name: str) -> LabelSet:
    """Resolve a canonical label-set name like ``omega6-r2`` to its LabelSet."""
    if name == "omega4":
        return omega4()
    if name == "omega6-equal":
        return omega6_equal()
    if name == "omega6-random":
        return omega6_random()
    m = re.fullmatch(r"(omega6|omega12)-r([0-9.]+)", name)
    if m:
        ratio = float(m.group(2))
        return omega6_ratio(ratio) if m.group(1) == "omega6" else omega12_ratio(ratio)
    raise ValueError(f"unknown label set {name!r}")
