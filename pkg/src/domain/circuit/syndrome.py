"""Noisy syndrome-extraction rounds."""

from __future__ import annotations

import logging
from typing import List, Tuple

from domain.codes import StabilizerCode

from .builder import ProgramBuilder
from .layout import BlockLayout, RoundEvent
from .models import Instruction, NoiseParams

logger = logging.getLogger(__name__)


def emit_syndrome_round(
    builder: ProgramBuilder,
    code: StabilizerCode,
    block: BlockLayout,
    basis_swapped: bool = False,
) -> RoundEvent:
    """Append one round for ``block`` and return its record layout.

    X-check ancillas are prepared and read out in the X basis and act as CNOT
    controls; Z-check ancillas use the Z basis and act as targets. A
    basis-swapped block (after a transversal H) exchanges the two roles.
    """
    data = block.data_qubits
    x_anc = block.x_ancillas
    z_anc = block.z_ancillas
    # (ancilla list, schedule, ancilla is control)
    groups: List[Tuple[List[int], tuple, bool]] = [
        (x_anc, code.x_schedule, not basis_swapped),
        (z_anc, code.z_schedule, basis_swapped),
    ]
    for ancillas, _, is_control in groups:
        if is_control:
            builder.reset_x(ancillas)
        else:
            builder.reset_z(ancillas)
    builder.tick()
    block_qubits = set(block.all_qubits)
    for t in range(code.tick_count):
        pairs: List[Tuple[int, int]] = []
        for ancillas, schedule, is_control in groups:
            for row, anc in enumerate(ancillas):
                local = schedule[row][t]
                if local is None:
                    continue
                q = data[local]
                pairs.append((anc, q) if is_control else (q, anc))
        builder.cnot(pairs)
        touched = {q for pair in pairs for q in pair}
        builder.idle(sorted(block_qubits - touched))
        builder.tick()
    records = []
    for ancillas, _, is_control in groups:
        if is_control:
            records.append(builder.measure_x(ancillas))
        else:
            records.append(builder.measure_z(ancillas))
    event = RoundEvent(
        block=block.name,
        x_records=tuple(records[0]),
        z_records=tuple(records[1]),
        after=builder.last_index,
        basis_swapped=basis_swapped,
    )
    builder.tick()
    logger.debug(
        "round on %s (swapped=%s) ends at %d", block.name, basis_swapped, event.after
    )
    return event


def single_block_layout(
    code: StabilizerCode, name: str = "CB1", node: int = 1
) -> BlockLayout:
    n = code.n
    return BlockLayout(
        name=name,
        node=node,
        n=n,
        data_offset=0,
        x_offset=n,
        x_count=code.h_x.rows,
        z_offset=n + code.h_x.rows,
        z_count=code.h_z.rows,
    )


def build_syndrome_round(
    code: StabilizerCode,
    block: BlockLayout,
    basis_swapped: bool,
    noise: NoiseParams,
) -> List[Instruction]:
    """Instruction segment of a single round on ``block``."""
    builder = ProgramBuilder(block.z_offset + block.z_count, noise)
    emit_syndrome_round(builder, code, block, basis_swapped)
    return builder.instructions
