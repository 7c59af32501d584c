"""Flip signatures of every noise component in one backward pass.

Walking the program from the end, ``sx[q]`` (``sz[q]``) is the bitmask of
outputs flipped by an X (Z) error on qubit ``q`` at the current point.
Outputs are numbered detectors first, then observables. The same pass
collects outputs that depend on a random quantity (a Z-type value at a
Z reset, or an X-type value at an X reset or measurement) into ``bad``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Tuple

from domain.circuit.models import (
    CircuitProgram,
    DeterminismError,
    Instruction,
    Opcode,
)

from .models import FlipSignature, PauliEvent

logger = logging.getLogger(__name__)

_ONE_QUBIT_PAULIS: Tuple[Tuple[str, ...], ...] = (("X",), ("Y",), ("Z",))
_TWO_QUBIT_PAULIS: Tuple[Tuple[str, ...], ...] = tuple(
    pair for pair in product("IXYZ", repeat=2) if pair != ("I", "I")
)

CHANNEL_COMPONENTS: Dict[Opcode, Tuple[Tuple[str, ...], ...]] = {
    Opcode.NOISE_BITFLIP: (("X",),),
    Opcode.NOISE_PHASEFLIP: (("Z",),),
    Opcode.NOISE_DEP1: _ONE_QUBIT_PAULIS,
    Opcode.NOISE_DEP2: _TWO_QUBIT_PAULIS,
}


@dataclass(frozen=True)
class NoiseChannel:
    """One independently sampled channel: a noise instruction on one target group."""

    location: int
    group: int
    qubits: Tuple[int, ...]
    prob: float
    components: Tuple[Tuple[str, ...], ...]
    signatures: Tuple[int, ...]

    @property
    def component_prob(self) -> float:
        return self.prob / len(self.components)

    def event(self, component: int) -> PauliEvent:
        return PauliEvent(
            location=self.location,
            component=self.components[component],
            prob=self.component_prob,
            group=self.group,
        )


@dataclass(frozen=True)
class SignatureTable:
    detector_count: int
    observable_count: int
    channels: Tuple[NoiseChannel, ...]
    nondeterministic: int

    @property
    def output_count(self) -> int:
        return self.detector_count + self.observable_count

    def signature(self, channel: int, component: int) -> FlipSignature:
        return FlipSignature.from_mask(
            self.channels[channel].signatures[component], self.detector_count
        )


def channel_groups(ins: Instruction) -> List[Tuple[int, ...]]:
    if ins.opcode is Opcode.NOISE_DEP2:
        return [tuple(pair) for pair in ins.pairs]
    return [(q,) for q in ins.qubits]


def _combine(
    component: Tuple[str, ...], qubits: Tuple[int, ...], sx: List[int], sz: List[int]
) -> int:
    mask = 0
    for pauli, q in zip(component, qubits):
        if pauli in ("X", "Y"):
            mask ^= sx[q]
        if pauli in ("Z", "Y"):
            mask ^= sz[q]
    return mask


def _backward_pass(program: CircuitProgram) -> Tuple[List[NoiseChannel], int, int, int]:
    instructions = program.instructions
    detector_count = program.detector_count
    observable_count = program.observable_count
    sx = [0] * program.qubit_count
    sz = [0] * program.qubit_count
    pending: Dict[int, int] = {}
    bad = 0
    record = program.measurement_count
    detector = detector_count
    channels: List[NoiseChannel] = []

    for location in range(len(instructions) - 1, -1, -1):
        ins = instructions[location]
        op = ins.opcode
        if op is Opcode.DETECTOR:
            detector -= 1
            bit = 1 << detector
            for r in ins.records:
                pending[r] = pending.get(r, 0) ^ bit
        elif op is Opcode.OBSERVABLE:
            bit = 1 << (detector_count + ins.index)
            for r in ins.records:
                pending[r] = pending.get(r, 0) ^ bit
        elif op is Opcode.MEASURE_Z:
            for q in reversed(ins.qubits):
                record -= 1
                bad |= sz[q]
                sx[q] ^= pending.pop(record, 0)
                sz[q] = 0
        elif op is Opcode.MEASURE_X:
            for q in reversed(ins.qubits):
                record -= 1
                bad |= sx[q]
                sz[q] ^= pending.pop(record, 0)
                sx[q] = 0
        elif op is Opcode.RESET_Z:
            for q in ins.qubits:
                bad |= sz[q]
                sx[q] = sz[q] = 0
        elif op is Opcode.RESET_X:
            for q in ins.qubits:
                bad |= sx[q]
                sx[q] = sz[q] = 0
        elif op is Opcode.BELL_INIT:
            # The pair is stabilized by XX and ZZ
            for a, b in ins.pairs:
                bad |= (sx[a] ^ sx[b]) | (sz[a] ^ sz[b])
                sx[a] = sx[b] = sz[a] = sz[b] = 0
        elif op is Opcode.H:
            for q in ins.qubits:
                sx[q], sz[q] = sz[q], sx[q]
        elif op is Opcode.CNOT:
            for c, t in reversed(ins.pairs):
                sx[c] ^= sx[t]
                sz[t] ^= sz[c]
        elif op is Opcode.COND_X:
            r = ins.records[0]
            pending[r] = pending.get(r, 0) ^ sx[ins.qubits[0]]
        elif op is Opcode.COND_Z:
            r = ins.records[0]
            pending[r] = pending.get(r, 0) ^ sz[ins.qubits[0]]
        elif ins.is_noise:
            components = CHANNEL_COMPONENTS[op]
            # reversed so the final flip restores forward group order
            groups = list(enumerate(channel_groups(ins)))
            for group, qubits in reversed(groups):
                channels.append(
                    NoiseChannel(
                        location=location,
                        group=group,
                        qubits=qubits,
                        prob=ins.prob,
                        components=components,
                        signatures=tuple(
                            _combine(c, qubits, sx, sz) for c in components
                        ),
                    )
                )
        # PAULI_X, PAULI_Z and TICK leave the error frame unchanged

    for q in range(program.qubit_count):
        bad |= sz[q]
    channels.reverse()
    return channels, bad, detector_count, observable_count


def build_signature_table(program: CircuitProgram) -> SignatureTable:
    channels, bad, detectors, observables = _backward_pass(program)
    logger.debug("signature table: %d channels", len(channels))
    return SignatureTable(
        detector_count=detectors,
        observable_count=observables,
        channels=tuple(channels),
        nondeterministic=bad,
    )


def _split(mask: int, detector_count: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    signature = FlipSignature.from_mask(mask, detector_count)
    return tuple(sorted(signature.detectors)), tuple(sorted(signature.observables))


def find_nondeterministic(
    program: CircuitProgram,
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Detector and observable indices that are random without noise."""
    _, bad, detectors, _ = _backward_pass(program)
    return _split(bad, detectors)


def check_determinism(program: CircuitProgram) -> None:
    detectors, observables = find_nondeterministic(program)
    if detectors or observables:
        raise DeterminismError(
            f"non-deterministic detectors {list(detectors)[:10]} "
            f"and observables {list(observables)[:10]}",
            detectors=detectors,
            observables=observables,
        )
