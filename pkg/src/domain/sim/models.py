from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Sequence, Tuple

import numpy as np

PAULIS = ("I", "X", "Y", "Z")


@dataclass(frozen=True)
class PauliEvent:
    """A concrete Pauli injected by noise instruction ``location``.

    ``component`` assigns one Pauli per target of the channel group ``group``
    (a single qubit, or a pair for two-qubit channels).
    """

    location: int
    component: Tuple[str, ...]
    prob: float
    group: int = 0

    def __post_init__(self) -> None:
        if any(p not in PAULIS for p in self.component):
            raise ValueError(f"invalid Pauli component {self.component}")
        if all(p == "I" for p in self.component):
            raise ValueError("identity component is not an error event")
        if not 0.0 < self.prob < 1.0:
            raise ValueError(f"event probability {self.prob} outside (0, 1)")


@dataclass(frozen=True)
class FlipSignature:
    detectors: FrozenSet[int] = frozenset()
    observables: FrozenSet[int] = frozenset()

    def __xor__(self, other: "FlipSignature") -> "FlipSignature":
        return FlipSignature(
            self.detectors ^ other.detectors, self.observables ^ other.observables
        )

    @property
    def is_empty(self) -> bool:
        return not self.detectors and not self.observables

    @classmethod
    def from_mask(cls, mask: int, detector_count: int) -> "FlipSignature":
        detectors = set()
        observables = set()
        while mask:
            low = mask & -mask
            bit = low.bit_length() - 1
            if bit < detector_count:
                detectors.add(bit)
            else:
                observables.add(bit - detector_count)
            mask ^= low
        return cls(frozenset(detectors), frozenset(observables))

    def to_mask(self, detector_count: int) -> int:
        mask = 0
        for d in self.detectors:
            mask |= 1 << d
        for o in self.observables:
            mask |= 1 << (detector_count + o)
        return mask


class ShotBatch:
    """Shot-major detector and observable bits (one uint8 per bit)."""

    def __init__(self, detector_bits: np.ndarray, observable_bits: np.ndarray) -> None:
        detector_bits = np.asarray(detector_bits, dtype=np.uint8)
        observable_bits = np.asarray(observable_bits, dtype=np.uint8)
        if detector_bits.ndim != 2 or observable_bits.ndim != 2:
            raise ValueError("shot batches are two-dimensional")
        if detector_bits.shape[0] != observable_bits.shape[0]:
            raise ValueError(
                f"shot count mismatch: {detector_bits.shape[0]} "
                f"vs {observable_bits.shape[0]}"
            )
        self.detector_bits = detector_bits
        self.observable_bits = observable_bits

    @property
    def shots(self) -> int:
        return int(self.detector_bits.shape[0])

    @property
    def detector_count(self) -> int:
        return int(self.detector_bits.shape[1])

    @property
    def observable_count(self) -> int:
        return int(self.observable_bits.shape[1])

    @classmethod
    def empty(cls, detector_count: int, observable_count: int) -> "ShotBatch":
        return cls(
            np.zeros((0, detector_count), dtype=np.uint8),
            np.zeros((0, observable_count), dtype=np.uint8),
        )

    @classmethod
    def concatenate(cls, batches: Sequence["ShotBatch"]) -> "ShotBatch":
        if not batches:
            raise ValueError("nothing to concatenate")
        return cls(
            np.vstack([b.detector_bits for b in batches]),
            np.vstack([b.observable_bits for b in batches]),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ShotBatch):
            return NotImplemented
        return bool(
            np.array_equal(self.detector_bits, other.detector_bits)
            and np.array_equal(self.observable_bits, other.observable_bits)
        )

    def __repr__(self) -> str:
        return (
            f"ShotBatch(shots={self.shots}, detectors={self.detector_count}, "
            f"observables={self.observable_count})"
        )
