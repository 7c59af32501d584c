"""The two distributed experiments: non-local CNOT and logical teleportation."""

from __future__ import annotations

import logging
from typing import Dict, List, Sequence, Tuple

from domain.codes import StabilizerCode
from domain.constants import (
    ROUNDS_AFTER_GADGET,
    ROUNDS_AFTER_TELEPORT,
    ROUNDS_BEFORE_GADGET,
)

from .builder import ProgramBuilder
from .frame_tracker import place_detectors
from .layout import (
    BlockLayout,
    CnotEvent,
    CorrectionEvent,
    ExperimentLayout,
    HadamardEvent,
    InitEvent,
    MeasureEvent,
)
from .models import FINAL_TAG, CircuitProgram, NoiseParams
from .syndrome import emit_syndrome_round

logger = logging.getLogger(__name__)

NONLOCAL_CNOT = "nonlocal-cnot"
TELEPORT = "teleport"


class _Experiment:
    """Qubit allocation plus the builder and layout being filled in."""

    def __init__(
        self,
        code: StabilizerCode,
        noise: NoiseParams,
        blocks: Sequence[Tuple[str, int]],
    ) -> None:
        self.code = code
        n = code.n
        size = n + code.h_x.rows + code.h_z.rows
        self.layout = ExperimentLayout()
        for position, (name, node) in enumerate(blocks):
            base = position * size
            self.layout.blocks.append(
                BlockLayout(
                    name=name,
                    node=node,
                    n=n,
                    data_offset=base,
                    x_offset=base + n,
                    x_count=code.h_x.rows,
                    z_offset=base + n + code.h_x.rows,
                    z_count=code.h_z.rows,
                )
            )
        self.ebit_offset = len(blocks) * size
        self.builder = ProgramBuilder(self.ebit_offset + 2 * n, noise)
        self.swapped: Dict[str, bool] = {name: False for name, _ in blocks}
        self.readouts: Dict[str, List[int]] = {}

    def block(self, name: str) -> BlockLayout:
        return self.layout.block(name)

    def init(self, name: str) -> None:
        self.builder.reset_z(self.block(name).data_qubits)
        self.layout.events.append(InitEvent(name))

    def rounds(self, names: Sequence[str], count: int) -> None:
        self.builder.tick()
        for _ in range(count):
            for name in names:
                event = emit_syndrome_round(
                    self.builder, self.code, self.block(name), self.swapped[name]
                )
                self.layout.events.append(event)

    def hadamard(self, name: str) -> None:
        self.builder.hadamard(self.block(name).data_qubits)
        self.builder.tick()
        self.swapped[name] = not self.swapped[name]
        self.layout.events.append(HadamardEvent(name))

    def local_cnot(
        self, control: str, target: str, pairs: Sequence[Tuple[int, int]]
    ) -> None:
        c_data = self.block(control).data_qubits
        t_data = self.block(target).data_qubits
        self.builder.cnot((c_data[c], t_data[t]) for c, t in pairs)
        self.builder.tick()
        self.layout.events.append(CnotEvent(control, target, tuple(pairs)))

    def nonlocal_cnot(
        self, control: str, target: str, pairs: Sequence[Tuple[int, int]]
    ) -> None:
        """Gate-teleported transversal CNOT consuming one ebit per pair."""
        b = self.builder
        c_data = self.block(control).data_qubits
        t_data = self.block(target).data_qubits
        near = [self.ebit_offset + i for i in range(len(pairs))]
        far = [self.ebit_offset + self.code.n + i for i in range(len(pairs))]
        b.bell(zip(near, far))
        b.tick()
        b.cnot((c_data[c], e) for (c, _), e in zip(pairs, near))
        b.tick()
        near_records = b.measure_z(near)
        b.tick()
        b.cond_x(zip(near_records, far))
        b.tick()
        b.cnot((e, t_data[t]) for (_, t), e in zip(pairs, far))
        b.tick()
        b.hadamard(far)
        b.tick()
        far_records = b.measure_z(far)
        b.tick()
        b.cond_z((r, c_data[c]) for r, (c, _) in zip(far_records, pairs))
        b.tick()
        self.layout.events.append(CnotEvent(control, target, tuple(pairs)))

    def measure(self, name: str, final: bool) -> List[int]:
        records = self.builder.measure_z(
            self.block(name).data_qubits, tag=FINAL_TAG if final else ""
        )
        self.layout.events.append(
            MeasureEvent(name, tuple(records), self.builder.last_index, final)
        )
        self.readouts[name] = records
        return records

    def correct(
        self, name: str, pauli: str, source: str, source_qubits: Sequence[int]
    ) -> None:
        readout = self.readouts[source]
        records = [readout[q] for q in source_qubits]
        data = self.block(name).data_qubits
        controls = list(zip(records, data))
        if pauli == "X":
            self.builder.cond_x(controls)
        else:
            self.builder.cond_z(controls)
        self.builder.tick()
        self.layout.events.append(
            CorrectionEvent(name, pauli, tuple(records), source, tuple(source_qubits))
        )

    def finish(self, kind: str, metadata: Dict[str, str]) -> CircuitProgram:
        program = self.builder.build(
            {
                "code": self.code.spec or self.code.name,
                "circuit": kind,
                "p": repr(self.builder.noise.p),
                "p_ebit": repr(self.builder.noise.p_ebit),
                **metadata,
            }
        )
        program.layout = self.layout
        annotated = place_detectors(program, self.code)
        logger.info(
            "built %s for %s: %d instructions, %d detectors, %d observables",
            kind,
            self.code.name,
            len(annotated.instructions),
            annotated.detector_count,
            annotated.observable_count,
        )
        return annotated


def build_nonlocal_cnot_experiment(
    code: StabilizerCode, noise: NoiseParams
) -> CircuitProgram:
    """CB1 (node 1) controls a transversal CNOT onto CB2 (node 2) through ebits."""
    exp = _Experiment(code, noise, [("CB1", 1), ("CB2", 2)])
    blocks = ["CB1", "CB2"]
    for name in blocks:
        exp.init(name)
    exp.rounds(blocks, ROUNDS_BEFORE_GADGET)
    exp.nonlocal_cnot("CB1", "CB2", [(i, i) for i in range(code.n)])
    exp.rounds(blocks, ROUNDS_AFTER_GADGET)
    for name in blocks:
        exp.measure(name, final=True)
    return exp.finish(NONLOCAL_CNOT, {})


def build_teleportation_experiment(
    code: StabilizerCode, noise: NoiseParams
) -> CircuitProgram:
    """Teleport the k logical qubits of CB1 (node 1) into CB3 (node 2).

    CB2 and CB3 are entangled into k logical Bell pairs by a transversal H on
    CB2 and a non-local CNOT; CB1 and CB2 are then Bell-measured and CB3 is
    corrected. Qubit i of a normal block pairs with qubit h_relabel(i) of the
    Hadamard-rotated CB2.
    """
    relabel = code.h_relabel
    exp = _Experiment(code, noise, [("CB1", 1), ("CB2", 1), ("CB3", 2)])
    blocks = ["CB1", "CB2", "CB3"]
    for name in blocks:
        exp.init(name)
    exp.rounds(blocks, ROUNDS_BEFORE_GADGET)
    exp.hadamard("CB2")
    exp.nonlocal_cnot("CB2", "CB3", [(relabel[i], i) for i in range(code.n)])
    exp.rounds(["CB2", "CB3"], ROUNDS_AFTER_GADGET)
    exp.local_cnot("CB1", "CB2", [(i, relabel[i]) for i in range(code.n)])
    exp.hadamard("CB1")
    exp.measure("CB1", final=False)
    exp.measure("CB2", final=False)
    exp.correct("CB3", "X", "CB2", [relabel[i] for i in range(code.n)])
    exp.correct("CB3", "Z", "CB1", range(code.n))
    exp.rounds(["CB3"], ROUNDS_AFTER_TELEPORT)
    exp.measure("CB3", final=True)
    return exp.finish(TELEPORT, {})


def build_experiment(
    kind: str, code: StabilizerCode, noise: NoiseParams
) -> CircuitProgram:
    if kind == NONLOCAL_CNOT:
        return build_nonlocal_cnot_experiment(code, noise)
    if kind == TELEPORT:
        return build_teleportation_experiment(code, noise)
    raise ValueError(f"Unknown circuit kind: {kind}")
