"""Forward Pauli-frame propagation of a single injected error."""

from __future__ import annotations

from typing import Set

from domain.circuit.models import CircuitProgram, Opcode

from .models import FlipSignature, PauliEvent
from .signatures import channel_groups


def propagate(program: CircuitProgram, event: PauliEvent) -> FlipSignature:
    """Detectors and observables flipped when only ``event`` occurs."""
    if not 0 <= event.location < len(program.instructions):
        raise IndexError(f"location {event.location} outside the program")
    source = program.instructions[event.location]
    if not source.is_noise:
        raise ValueError(f"instruction {event.location} is not a noise channel")
    groups = channel_groups(source)
    fits = 0 <= event.group < len(groups)
    if not fits or len(groups[event.group]) != len(event.component):
        raise ValueError(
            f"component {event.component} does not fit group {event.group}"
        )

    x: Set[int] = set()
    z: Set[int] = set()
    flipped: Set[int] = set()
    detectors: Set[int] = set()
    observables: Set[int] = set()
    record = 0
    detector = 0

    for location, ins in enumerate(program.instructions):
        op = ins.opcode
        if location == event.location:
            for pauli, q in zip(event.component, groups[event.group]):
                if pauli in ("X", "Y"):
                    x ^= {q}
                if pauli in ("Z", "Y"):
                    z ^= {q}
            continue
        if location < event.location:
            # Only the counters matter before the error exists
            if op in (Opcode.MEASURE_Z, Opcode.MEASURE_X):
                record += len(ins.qubits)
            elif op is Opcode.DETECTOR:
                detector += 1
            continue
        if op is Opcode.H:
            for q in ins.qubits:
                in_x, in_z = q in x, q in z
                x.discard(q)
                z.discard(q)
                if in_z:
                    x.add(q)
                if in_x:
                    z.add(q)
        elif op is Opcode.CNOT:
            for c, t in ins.pairs:
                if c in x:
                    x ^= {t}
                if t in z:
                    z ^= {c}
        elif op in (Opcode.RESET_Z, Opcode.RESET_X, Opcode.BELL_INIT):
            for q in ins.qubits:
                x.discard(q)
                z.discard(q)
        elif op is Opcode.MEASURE_Z:
            for q in ins.qubits:
                if q in x:
                    flipped.add(record)
                z.discard(q)
                record += 1
        elif op is Opcode.MEASURE_X:
            for q in ins.qubits:
                if q in z:
                    flipped.add(record)
                x.discard(q)
                record += 1
        elif op is Opcode.COND_X:
            if ins.records[0] in flipped:
                x ^= {ins.qubits[0]}
        elif op is Opcode.COND_Z:
            if ins.records[0] in flipped:
                z ^= {ins.qubits[0]}
        elif op is Opcode.DETECTOR:
            if len(flipped.intersection(ins.records)) % 2:
                detectors.add(detector)
            detector += 1
        elif op is Opcode.OBSERVABLE:
            if len(flipped.intersection(ins.records)) % 2:
                observables ^= {ins.index}
    return FlipSignature(frozenset(detectors), frozenset(observables))
