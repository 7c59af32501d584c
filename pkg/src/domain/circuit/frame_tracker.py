"""Detector and observable placement by logical-frame tracking.

Every block carries two frames: the ``Z`` frame holds the H_Z rows followed
by the logical Z supports, the ``X`` frame the H_X rows followed by the
logical X supports. Each slot stores the current eigenvalue of its operator
as an affine form over GF(2): a bitmask of measurement records plus a bitmask
of unknowns (random initial values of X-type operators). A transversal H
only flips which physical Pauli type a frame stands for; supports stay put.

A row of the frame currently acting as physical Z, measured while its value
has no unknowns, yields a detector. A measurement of an operator with
unknowns instead pins one unknown to the measured record. A readout that is
not final keeps the forms of determined operators, so a later correction
keyed on that readout adds the expected values from the last round rather
than the raw data records.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from domain.codes import StabilizerCode
from domain.linalg import BitMatrix, BitVector, solve

from .layout import (
    CnotEvent,
    CorrectionEvent,
    ExperimentLayout,
    HadamardEvent,
    InitEvent,
    MeasureEvent,
    RoundEvent,
)
from .models import CircuitProgram, DeterminismError, Instruction, Opcode

logger = logging.getLogger(__name__)

FRAMES = ("Z", "X")


def record_indices(mask: int) -> List[int]:
    indices = []
    while mask:
        low = mask & -mask
        indices.append(low.bit_length() - 1)
        mask ^= low
    return indices


class _FrameBasis:
    """Supports of one frame and a cached decomposition into them."""

    def __init__(self, rows: BitMatrix, logicals: List[BitVector]) -> None:
        self.row_count = rows.rows
        dense = rows.to_dense()
        if logicals:
            dense = np.vstack([dense, np.array([v.to_dense() for v in logicals])])
        self.supports: List[Tuple[int, ...]] = [
            tuple(int(q) for q in np.flatnonzero(r)) for r in dense
        ]
        self._columns = BitMatrix.from_dense(dense.T)
        self._cache: Dict[Tuple[int, ...], Tuple[int, ...]] = {}

    def __len__(self) -> int:
        return len(self.supports)

    def decompose(self, support: Tuple[int, ...]) -> Tuple[int, ...]:
        key = tuple(sorted(support))
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        target = BitVector.from_indices(self._columns.rows, key)
        coefficients = solve(self._columns, target)
        if coefficients is None:
            raise DeterminismError(
                f"operator on qubits {list(key)} is outside the tracked frame"
            )
        result = tuple(coefficients.support())
        self._cache[key] = result
        return result


@dataclass
class _BlockFrame:
    swapped: bool = False
    measured: bool = False
    records: Dict[str, List[int]] = field(default_factory=dict)
    unknowns: Dict[str, List[int]] = field(default_factory=dict)

    def frame_of(self, pauli: str) -> str:
        """Frame whose operators currently act as physical ``pauli``."""
        if not self.swapped:
            return pauli
        return "X" if pauli == "Z" else "Z"


class FrameTracker:
    def __init__(self, code: StabilizerCode, layout: ExperimentLayout) -> None:
        self.code = code
        self.layout = layout
        self.bases = {
            "Z": _FrameBasis(code.h_z, code.logical_z),
            "X": _FrameBasis(code.h_x, code.logical_x),
        }
        self.blocks: Dict[str, _BlockFrame] = {}
        self._next_unknown = 0
        # (after index, records) of detectors and observables in emission order
        self.detectors: List[Tuple[int, int]] = []
        self.observables: List[Tuple[int, int, int]] = []

    # --- affine-form bookkeeping ---------------------------------------
    def _slots(self) -> Iterator[Tuple[_BlockFrame, str]]:
        for frame_state in self.blocks.values():
            for frame in FRAMES:
                yield frame_state, frame

    def _eliminate(self, unknown_bit: int, rec: int, unknowns: int) -> None:
        """Substitute ``unknown = rec + (unknowns - unknown)`` everywhere."""
        for state, frame in self._slots():
            recs = state.records[frame]
            vars_ = state.unknowns[frame]
            for i, v in enumerate(vars_):
                if v & unknown_bit:
                    recs[i] ^= rec
                    vars_[i] = v ^ unknowns

    def _measure_slot(
        self,
        state: _BlockFrame,
        frame: str,
        slot: int,
        outcome: int,
        overwrite: bool = True,
    ) -> Optional[int]:
        """Condition on ``outcome`` (record mask) measuring the slot's operator.

        Returns the detector parity when the value was already determined; the
        slot then keeps its old form unless ``overwrite`` is set.
        """
        rec = state.records[frame][slot]
        unknowns = state.unknowns[frame][slot]
        if unknowns == 0:
            if overwrite:
                state.records[frame][slot] = outcome
            return outcome ^ rec
        pivot = 1 << (unknowns.bit_length() - 1)
        self._eliminate(pivot, outcome ^ rec, unknowns)
        state.records[frame][slot] = outcome
        state.unknowns[frame][slot] = 0
        return None

    # --- events --------------------------------------------------------
    def _state(self, name: str) -> _BlockFrame:
        state = self.blocks.get(name)
        if state is None:
            raise KeyError(f"block {name} used before initialization")
        if state.measured:
            raise ValueError(f"block {name} used after its final readout")
        return state

    def _init(self, event: InitEvent) -> None:
        state = _BlockFrame()
        for frame in FRAMES:
            size = len(self.bases[frame])
            state.records[frame] = [0] * size
            if frame == "Z":
                state.unknowns[frame] = [0] * size
            else:
                first = self._next_unknown
                state.unknowns[frame] = [1 << (first + i) for i in range(size)]
                self._next_unknown += size
        self.blocks[event.block] = state

    def _round(self, event: RoundEvent) -> None:
        state = self._state(event.block)
        # detectors sit on whichever frame currently holds the physical Z checks
        detecting = state.frame_of("Z")
        for frame, records in (("X", event.x_records), ("Z", event.z_records)):
            for row, record in enumerate(records):
                parity = self._measure_slot(state, frame, row, 1 << record)
                if frame == detecting and parity is not None:
                    self.detectors.append((event.after, parity))

    def _cnot(self, event: CnotEvent) -> None:
        control = self._state(event.control)
        target = self._state(event.target)
        to_target = dict(event.pairs)
        to_control = {t: c for c, t in event.pairs}
        updates: List[Tuple[_BlockFrame, str, int, int, int]] = []
        # Z on the target picks up Z on the control
        # X on the control picks up X on the target
        for state, other, pauli, mapping in (
            (target, control, "Z", to_control),
            (control, target, "X", to_target),
        ):
            frame = state.frame_of(pauli)
            other_frame = other.frame_of(pauli)
            basis = self.bases[frame]
            other_basis = self.bases[other_frame]
            for slot, support in enumerate(basis.supports):
                mapped = tuple(mapping[q] for q in support if q in mapping)
                if not mapped:
                    continue
                rec = 0
                unknowns = 0
                for part in other_basis.decompose(mapped):
                    rec ^= other.records[other_frame][part]
                    unknowns ^= other.unknowns[other_frame][part]
                updates.append((state, frame, slot, rec, unknowns))
        for state, frame, slot, rec, unknowns in updates:
            state.records[frame][slot] ^= rec
            state.unknowns[frame][slot] ^= unknowns

    def _measure(self, event: MeasureEvent) -> None:
        state = self._state(event.block)
        frame = state.frame_of("Z")
        basis = self.bases[frame]
        for slot, support in enumerate(basis.supports):
            outcome = 0
            for q in support:
                outcome ^= 1 << event.records[q]
            parity = self._measure_slot(
                state, frame, slot, outcome, overwrite=event.final
            )
            if not event.final:
                continue
            if parity is None:
                raise DeterminismError(
                    f"{event.block}: final readout of {frame}{slot} is not determined"
                )
            if slot < basis.row_count:
                self.detectors.append((event.after, parity))
            else:
                self.observables.append((event.after, len(self.observables), parity))
        if event.final:
            state.measured = True

    def _correct(self, event: CorrectionEvent) -> None:
        state = self._state(event.block)
        source = self.blocks.get(event.source)
        if source is None:
            raise KeyError(f"correction source {event.source} was never initialized")
        source_frame = source.frame_of("Z")
        source_basis = self.bases[source_frame]
        # A conditional X flips Z-type values, a conditional Z flips X-type values
        flipped = "Z" if event.pauli == "X" else "X"
        frame = state.frame_of(flipped)
        for slot, support in enumerate(self.bases[frame].supports):
            mapped = tuple(event.source_qubits[q] for q in support)
            rec = 0
            unknowns = 0
            for part in source_basis.decompose(mapped):
                rec ^= source.records[source_frame][part]
                unknowns ^= source.unknowns[source_frame][part]
            state.records[frame][slot] ^= rec
            state.unknowns[frame][slot] ^= unknowns

    def run(self) -> None:
        handlers = {
            InitEvent: self._init,
            RoundEvent: self._round,
            HadamardEvent: self._hadamard,
            CnotEvent: self._cnot,
            MeasureEvent: self._measure,
            CorrectionEvent: self._correct,
        }
        for event in self.layout.events:
            handlers[type(event)](event)  # type: ignore[operator]

    def _hadamard(self, event: HadamardEvent) -> None:
        state = self._state(event.block)
        state.swapped = not state.swapped


def place_detectors(program: CircuitProgram, code: StabilizerCode) -> CircuitProgram:
    """Insert DETECTOR and OBSERVABLE annotations and verify their determinism."""
    if program.layout is None:
        raise ValueError("program carries no experiment layout")
    base = program.without_annotations()
    tracker = FrameTracker(code, program.layout)
    tracker.run()

    inserts: Dict[int, List[Instruction]] = {}
    for after, parity in tracker.detectors:
        records = tuple(sorted(record_indices(parity), reverse=True))
        detector = Instruction(Opcode.DETECTOR, records=records)
        inserts.setdefault(after, []).append(detector)
    for after, index, parity in tracker.observables:
        inserts.setdefault(after, []).append(
            Instruction(
                Opcode.OBSERVABLE,
                records=tuple(sorted(record_indices(parity), reverse=True)),
                index=index,
            )
        )
    annotated: List[Instruction] = []
    for position, instruction in enumerate(base.instructions):
        annotated.append(instruction)
        annotated.extend(inserts.get(position, ()))
    result = CircuitProgram(
        qubit_count=base.qubit_count,
        instructions=annotated,
        metadata=dict(base.metadata),
        layout=program.layout,
    )
    result.metadata["detectors"] = str(len(tracker.detectors))
    result.metadata["observables"] = str(len(tracker.observables))

    # domain.sim imports this package
    from domain.sim.signatures import check_determinism

    check_determinism(result)
    logger.debug(
        "placed %d detectors and %d observables",
        len(tracker.detectors),
        len(tracker.observables),
    )
    return result
