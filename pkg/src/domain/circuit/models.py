from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .layout import ExperimentLayout


class Opcode(Enum):
    RESET_Z = "RESET_Z"
    RESET_X = "RESET_X"
    MEASURE_Z = "MEASURE_Z"
    MEASURE_X = "MEASURE_X"
    H = "H"
    CNOT = "CNOT"
    PAULI_X = "PAULI_X"
    PAULI_Z = "PAULI_Z"
    COND_X = "COND_X"
    COND_Z = "COND_Z"
    BELL_INIT = "BELL_INIT"
    NOISE_BITFLIP = "NOISE_BITFLIP"
    NOISE_PHASEFLIP = "NOISE_PHASEFLIP"
    NOISE_DEP1 = "NOISE_DEP1"
    NOISE_DEP2 = "NOISE_DEP2"
    TICK = "TICK"
    DETECTOR = "DETECTOR"
    OBSERVABLE = "OBSERVABLE"


NOISE_OPCODES = frozenset(
    {Opcode.NOISE_BITFLIP, Opcode.NOISE_PHASEFLIP, Opcode.NOISE_DEP1, Opcode.NOISE_DEP2}
)
MEASURE_OPCODES = frozenset({Opcode.MEASURE_Z, Opcode.MEASURE_X})
PAIR_OPCODES = frozenset({Opcode.CNOT, Opcode.BELL_INIT, Opcode.NOISE_DEP2})
CONDITIONAL_OPCODES = frozenset({Opcode.COND_X, Opcode.COND_Z})
ANNOTATION_OPCODES = frozenset({Opcode.DETECTOR, Opcode.OBSERVABLE})

FINAL_TAG = "final"


class DeterminismError(RuntimeError):
    """Raised when detectors or observables are random in the noiseless circuit."""

    def __init__(
        self,
        message: str,
        detectors: Tuple[int, ...] = (),
        observables: Tuple[int, ...] = (),
    ) -> None:
        super().__init__(message)
        self.detectors = detectors
        self.observables = observables


@dataclass(frozen=True)
class Instruction:
    """One circuit operation.

    ``records`` holds absolute measurement indices; the text format writes
    them relative to the measurement count at that point.
    """

    opcode: Opcode
    qubits: Tuple[int, ...] = ()
    records: Tuple[int, ...] = ()
    prob: float = 0.0
    index: int = 0
    tag: str = ""

    def __post_init__(self) -> None:
        op = self.opcode
        if not 0.0 <= self.prob <= 1.0:
            raise ValueError(f"probability {self.prob} outside [0, 1] for {op.name}")
        if op in CONDITIONAL_OPCODES:
            if len(self.records) != 1 or len(self.qubits) != 1:
                raise ValueError(f"{op.name} needs one record and one qubit")
        elif op in ANNOTATION_OPCODES:
            if self.qubits:
                raise ValueError(f"{op.name} takes only record references")
        elif self.records:
            raise ValueError(f"{op.name} takes no record references")
        if op in PAIR_OPCODES and len(self.qubits) % 2:
            raise ValueError(
                f"{op.name} needs qubit pairs, got {len(self.qubits)} targets"
            )
        if any(q < 0 for q in self.qubits) or any(r < 0 for r in self.records):
            raise ValueError(f"negative target in {op.name}")

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        q = self.qubits
        return [(q[i], q[i + 1]) for i in range(0, len(q), 2)]

    @property
    def is_noise(self) -> bool:
        return self.opcode in NOISE_OPCODES


@dataclass(frozen=True)
class NoiseParams:
    p: float
    p_ebit: float
    idle_enabled: bool = False

    def __post_init__(self) -> None:
        for name, value in (("p", self.p), ("p_ebit", self.p_ebit)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [0, 1]")

    @classmethod
    def from_ratio(
        cls, p: float, ratio: float, idle_enabled: bool = False
    ) -> "NoiseParams":
        return cls(p=p, p_ebit=min(1.0, ratio * p), idle_enabled=idle_enabled)


@dataclass(frozen=True)
class GateCensus:
    oneq: int
    twoq: int
    meas_mid: int
    meas_total: int

    def __str__(self) -> str:
        return (
            f"1q={self.oneq} 2q={self.twoq} "
            f"M={self.meas_mid} M_total={self.meas_total}"
        )


@dataclass
class CircuitProgram:
    qubit_count: int
    instructions: List[Instruction] = field(default_factory=list)
    metadata: Dict[str, str] = field(default_factory=dict)
    layout: Optional[ExperimentLayout] = field(default=None, compare=False, repr=False)

    @property
    def measurement_count(self) -> int:
        measured = (i for i in self.instructions if i.opcode in MEASURE_OPCODES)
        return sum(len(i.qubits) for i in measured)

    @property
    def detector_count(self) -> int:
        return sum(1 for i in self.instructions if i.opcode is Opcode.DETECTOR)

    @property
    def observable_count(self) -> int:
        indices = [i.index for i in self.instructions if i.opcode is Opcode.OBSERVABLE]
        return max(indices) + 1 if indices else 0

    def validate(self) -> None:
        """Check qubit bounds and that record references point backwards."""
        measured = 0
        for position, ins in enumerate(self.instructions):
            for q in ins.qubits:
                if q >= self.qubit_count:
                    raise ValueError(
                        f"instruction {position} ({ins.opcode.name}) targets qubit {q} "
                        f"of {self.qubit_count}"
                    )
            for r in ins.records:
                if r >= measured:
                    raise ValueError(
                        f"instruction {position} ({ins.opcode.name}) references "
                        f"record {r} before it is measured"
                    )
            if ins.opcode in MEASURE_OPCODES:
                measured += len(ins.qubits)

    def without_annotations(self) -> "CircuitProgram":
        return CircuitProgram(
            qubit_count=self.qubit_count,
            instructions=[
                i for i in self.instructions if i.opcode not in ANNOTATION_OPCODES
            ],
            metadata=dict(self.metadata),
            layout=self.layout,
        )
