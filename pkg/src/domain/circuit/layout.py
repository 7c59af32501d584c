"""Block-level record of what an experiment builder emitted.

Detector placement works on these events instead of re-deriving the logical
structure from raw instructions. Every ``after`` field is the index of the
last instruction of the event in the unannotated program.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple, Union


@dataclass(frozen=True)
class BlockLayout:
    name: str
    node: int
    n: int
    data_offset: int
    x_offset: int
    x_count: int
    z_offset: int
    z_count: int

    @property
    def data_qubits(self) -> List[int]:
        return list(range(self.data_offset, self.data_offset + self.n))

    @property
    def x_ancillas(self) -> List[int]:
        return list(range(self.x_offset, self.x_offset + self.x_count))

    @property
    def z_ancillas(self) -> List[int]:
        return list(range(self.z_offset, self.z_offset + self.z_count))

    @property
    def all_qubits(self) -> List[int]:
        return list(range(self.data_offset, self.z_offset + self.z_count))

    @property
    def size(self) -> int:
        return self.n + self.x_count + self.z_count


@dataclass(frozen=True)
class InitEvent:
    block: str


@dataclass(frozen=True)
class RoundEvent:
    block: str
    x_records: Tuple[int, ...]
    z_records: Tuple[int, ...]
    after: int
    basis_swapped: bool = False


@dataclass(frozen=True)
class HadamardEvent:
    block: str


@dataclass(frozen=True)
class CnotEvent:
    """Transversal CNOT; ``pairs`` are block-local (control, target) data indices."""

    control: str
    target: str
    pairs: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class MeasureEvent:
    block: str
    records: Tuple[int, ...]
    after: int
    final: bool


@dataclass(frozen=True)
class CorrectionEvent:
    """Classically controlled Pauli on each data qubit of ``block``.

    Qubit i is controlled by ``records[i]``, the readout of data qubit
    ``source_qubits[i]`` of the already measured block ``source``.
    """

    block: str
    pauli: str
    records: Tuple[int, ...]
    source: str
    source_qubits: Tuple[int, ...]


LayoutEvent = Union[
    InitEvent, RoundEvent, HadamardEvent, CnotEvent, MeasureEvent, CorrectionEvent
]


@dataclass
class ExperimentLayout:
    blocks: List[BlockLayout] = field(default_factory=list)
    events: List[LayoutEvent] = field(default_factory=list)

    def block(self, name: str) -> BlockLayout:
        for b in self.blocks:
            if b.name == name:
                return b
        raise KeyError(f"Unknown block: {name}")
