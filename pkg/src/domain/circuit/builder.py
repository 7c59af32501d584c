"""Instruction emitter that attaches the circuit noise model to each operation."""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .models import (
    CircuitProgram,
    Instruction,
    NoiseParams,
    Opcode,
)


class ProgramBuilder:
    """Appends instructions with their noise.

    Resets are followed by a flip in the prepared basis, measurements are
    preceded by a flip in the measured basis, gates are followed by
    depolarizing noise and Bell pairs by two-qubit depolarizing noise at the
    ebit rate. Zero-probability channels are not emitted.
    """

    def __init__(self, qubit_count: int, noise: NoiseParams) -> None:
        self.qubit_count = qubit_count
        self.noise = noise
        self.instructions: List[Instruction] = []
        self.measurements = 0

    @property
    def last_index(self) -> int:
        return len(self.instructions) - 1

    def _emit(
        self,
        opcode: Opcode,
        qubits: Sequence[int] = (),
        records: Sequence[int] = (),
        prob: float = 0.0,
        tag: str = "",
    ) -> None:
        self.instructions.append(
            Instruction(opcode, tuple(qubits), tuple(records), prob=prob, tag=tag)
        )

    def _noise(self, opcode: Opcode, qubits: Sequence[int], prob: float) -> None:
        if prob > 0 and qubits:
            self._emit(opcode, qubits, prob=prob)

    def tick(self) -> None:
        self._emit(Opcode.TICK)

    def reset_z(self, qubits: Sequence[int]) -> None:
        if not qubits:
            return
        self._emit(Opcode.RESET_Z, qubits)
        self._noise(Opcode.NOISE_BITFLIP, qubits, self.noise.p)

    def reset_x(self, qubits: Sequence[int]) -> None:
        if not qubits:
            return
        self._emit(Opcode.RESET_X, qubits)
        self._noise(Opcode.NOISE_PHASEFLIP, qubits, self.noise.p)

    def _measure(self, opcode: Opcode, qubits: Sequence[int], tag: str) -> List[int]:
        if not qubits:
            return []
        flip = Opcode.NOISE_PHASEFLIP
        if opcode is Opcode.MEASURE_Z:
            flip = Opcode.NOISE_BITFLIP
        self._noise(flip, qubits, self.noise.p)
        self._emit(opcode, qubits, tag=tag)
        first = self.measurements
        self.measurements += len(qubits)
        return list(range(first, self.measurements))

    def measure_z(self, qubits: Sequence[int], tag: str = "") -> List[int]:
        return self._measure(Opcode.MEASURE_Z, qubits, tag)

    def measure_x(self, qubits: Sequence[int], tag: str = "") -> List[int]:
        return self._measure(Opcode.MEASURE_X, qubits, tag)

    def hadamard(self, qubits: Sequence[int]) -> None:
        if not qubits:
            return
        self._emit(Opcode.H, qubits)
        self._noise(Opcode.NOISE_DEP1, qubits, self.noise.p)

    def cnot(self, pairs: Iterable[Tuple[int, int]]) -> None:
        flat = [q for pair in pairs for q in pair]
        if not flat:
            return
        self._emit(Opcode.CNOT, flat)
        self._noise(Opcode.NOISE_DEP2, flat, self.noise.p)

    def _conditional(self, opcode: Opcode, controls: Iterable[Tuple[int, int]]) -> None:
        touched = []
        for record, qubit in controls:
            self._emit(opcode, (qubit,), records=(record,))
            touched.append(qubit)
        self._noise(Opcode.NOISE_DEP1, touched, self.noise.p)

    def cond_x(self, controls: Iterable[Tuple[int, int]]) -> None:
        """Apply X to each qubit if its (record, qubit) control record flipped."""
        self._conditional(Opcode.COND_X, controls)

    def cond_z(self, controls: Iterable[Tuple[int, int]]) -> None:
        self._conditional(Opcode.COND_Z, controls)

    def bell(self, pairs: Iterable[Tuple[int, int]]) -> None:
        flat = [q for pair in pairs for q in pair]
        if not flat:
            return
        self._emit(Opcode.BELL_INIT, flat)
        self._noise(Opcode.NOISE_DEP2, flat, self.noise.p_ebit)

    def idle(self, qubits: Sequence[int]) -> None:
        if self.noise.idle_enabled:
            self._noise(Opcode.NOISE_DEP1, qubits, self.noise.p)

    def build(self, metadata: Optional[Dict[str, str]] = None) -> CircuitProgram:
        program = CircuitProgram(
            qubit_count=self.qubit_count,
            instructions=list(self.instructions),
            metadata=dict(metadata or {}),
        )
        assert program.measurement_count == self.measurements
        return program
