from __future__ import annotations

from .models import FINAL_TAG, MEASURE_OPCODES, CircuitProgram, GateCensus, Opcode

_ONE_QUBIT = frozenset({Opcode.H, Opcode.COND_X, Opcode.COND_Z})


def census(program: CircuitProgram) -> GateCensus:
    """Gate counts: H and conditional Paulis are 1q, CNOT pairs are 2q.

    Bell-pair creation is free, and measurements tagged as the final data
    readout are excluded from the mid-circuit count.
    """
    oneq = twoq = meas_mid = meas_total = 0
    for ins in program.instructions:
        if ins.opcode in _ONE_QUBIT:
            oneq += len(ins.qubits)
        elif ins.opcode is Opcode.CNOT:
            twoq += len(ins.qubits) // 2
        elif ins.opcode in MEASURE_OPCODES:
            meas_total += len(ins.qubits)
            if ins.tag != FINAL_TAG:
                meas_mid += len(ins.qubits)
    return GateCensus(oneq=oneq, twoq=twoq, meas_mid=meas_mid, meas_total=meas_total)
