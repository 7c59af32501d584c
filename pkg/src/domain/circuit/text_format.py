"""Line-oriented circuit text format.

Record references are written relative to the measurements emitted so far
(``rec[-1]`` is the latest). ``BELL a b`` prepares a noiseless Bell pair;
a trailing ``#!final`` marks the final data readout; leading ``#! key=value``
lines carry program metadata.
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional

from .models import (
    MEASURE_OPCODES,
    CircuitProgram,
    Instruction,
    Opcode,
)

_GATE_NAMES = {
    Opcode.RESET_Z: "R",
    Opcode.RESET_X: "RX",
    Opcode.MEASURE_Z: "M",
    Opcode.MEASURE_X: "MX",
    Opcode.H: "H",
    Opcode.CNOT: "CX",
    Opcode.PAULI_X: "X",
    Opcode.PAULI_Z: "Z",
    Opcode.BELL_INIT: "BELL",
    Opcode.TICK: "TICK",
}
_NOISE_NAMES = {
    Opcode.NOISE_BITFLIP: "X_ERROR",
    Opcode.NOISE_PHASEFLIP: "Z_ERROR",
    Opcode.NOISE_DEP1: "DEPOLARIZE1",
    Opcode.NOISE_DEP2: "DEPOLARIZE2",
}
_BY_NAME = {name: op for op, name in {**_GATE_NAMES, **_NOISE_NAMES}.items()}

_HEAD_RE = re.compile(r"^([A-Z_0-9]+)(?:\(([^)]*)\))?$")
_REC_RE = re.compile(r"^rec\[-(\d+)\]$")


class CircuitParseError(ValueError):
    def __init__(self, line_number: int, message: str) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def _rel(record: int, measured: int) -> str:
    return f"rec[-{measured - record}]"


def serialize(program: CircuitProgram) -> str:
    lines = [f"#! qubits={program.qubit_count}"]
    for key, value in program.metadata.items():
        if key != "qubits":
            lines.append(f"#! {key}={value}")
    measured = 0
    for ins in program.instructions:
        op = ins.opcode
        targets = " ".join(str(q) for q in ins.qubits)
        if op in _GATE_NAMES:
            line = _GATE_NAMES[op] + (f" {targets}" if targets else "")
        elif op in _NOISE_NAMES:
            line = f"{_NOISE_NAMES[op]}({ins.prob!r}) {targets}"
        elif op is Opcode.COND_X or op is Opcode.COND_Z:
            name = "CX" if op is Opcode.COND_X else "CZ"
            line = f"{name} {_rel(ins.records[0], measured)} {ins.qubits[0]}"
        else:
            refs = " ".join(_rel(r, measured) for r in ins.records)
            head = "DETECTOR"
            if op is Opcode.OBSERVABLE:
                head = f"OBSERVABLE_INCLUDE({ins.index})"
            line = head + (f" {refs}" if refs else "")
        if ins.tag:
            line += f" #!{ins.tag}"
        lines.append(line)
        if op in MEASURE_OPCODES:
            measured += len(ins.qubits)
    return "\n".join(lines) + "\n"


def _qubit(token: str, number: int) -> int:
    if not token.isdigit():
        raise CircuitParseError(number, f"invalid qubit target {token!r}")
    return int(token)


def _record(token: str, measured: int, number: int) -> int:
    match = _REC_RE.match(token)
    if match is None:
        raise CircuitParseError(number, f"invalid record reference {token!r}")
    back = int(match.group(1))
    if back == 0 or back > measured:
        raise CircuitParseError(
            number, f"{token} points outside the {measured} measurements so far"
        )
    return measured - back


def _probability(arg: Optional[str], name: str, number: int) -> float:
    if arg is None:
        raise CircuitParseError(number, f"{name} needs a probability argument")
    try:
        value = float(arg)
    except ValueError as e:
        raise CircuitParseError(number, f"invalid probability {arg!r}") from e
    if not 0.0 <= value <= 1.0:
        raise CircuitParseError(number, f"probability {value} outside [0, 1]")
    return value


def _parse_line(
    body: str, tag: str, measured: int, number: int
) -> List[Instruction]:
    head, *targets = body.split()
    match = _HEAD_RE.match(head)
    if match is None:
        raise CircuitParseError(number, f"cannot parse {head!r}")
    name, arg = match.groups()
    conditional = any(t.startswith("rec[") for t in targets)

    if name in ("CX", "CZ") and (conditional or name == "CZ"):
        if len(targets) % 2 or not targets:
            raise CircuitParseError(number, f"{name} needs record/qubit pairs")
        opcode = Opcode.COND_X if name == "CX" else Opcode.COND_Z
        return [
            Instruction(
                opcode,
                (_qubit(targets[i + 1], number),),
                (_record(targets[i], measured, number),),
            )
            for i in range(0, len(targets), 2)
        ]
    if name == "DETECTOR":
        records = tuple(_record(t, measured, number) for t in targets)
        return [Instruction(Opcode.DETECTOR, records=records, tag=tag)]
    if name == "OBSERVABLE_INCLUDE":
        if arg is None or not arg.isdigit():
            raise CircuitParseError(
                number, "OBSERVABLE_INCLUDE needs an index argument"
            )
        records = tuple(_record(t, measured, number) for t in targets)
        observable = Instruction(
            Opcode.OBSERVABLE, records=records, index=int(arg), tag=tag
        )
        return [observable]

    opcode = _BY_NAME.get(name)
    if opcode is None:
        raise CircuitParseError(number, f"unknown instruction {name!r}")
    if conditional:
        raise CircuitParseError(number, f"{name} does not take record references")
    qubits = tuple(_qubit(t, number) for t in targets)
    prob = 0.0
    if opcode in _NOISE_NAMES:
        prob = _probability(arg, name, number)
    elif arg is not None:
        raise CircuitParseError(number, f"{name} takes no argument")
    try:
        return [Instruction(opcode, qubits, prob=prob, tag=tag)]
    except ValueError as e:
        raise CircuitParseError(number, str(e)) from e


def parse(text: str) -> CircuitProgram:
    metadata: Dict[str, str] = {}
    instructions: List[Instruction] = []
    measured = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#!") and not instructions:
            key, sep, value = line[2:].strip().partition("=")
            if sep:
                metadata[key.strip()] = value.strip()
                continue
        body, _, comment = line.partition("#")
        body = body.strip()
        if not body:
            continue
        tag = comment[1:].strip() if comment.startswith("!") else ""
        parsed = _parse_line(body, tag, measured, number)
        for ins in parsed:
            if ins.opcode in MEASURE_OPCODES:
                measured += len(ins.qubits)
        instructions.extend(parsed)

    highest = max((q for ins in instructions for q in ins.qubits), default=-1)
    declared = metadata.pop("qubits", None)
    qubit_count = highest + 1
    if declared is not None:
        try:
            qubit_count = int(declared)
        except ValueError as e:
            raise CircuitParseError(1, f"invalid qubit count {declared!r}") from e
        if qubit_count <= highest:
            raise CircuitParseError(
                1, f"qubit {highest} exceeds declared count {qubit_count}"
            )
    return CircuitProgram(
        qubit_count=qubit_count, instructions=instructions, metadata=metadata
    )
