"""Circuit IR, noisy experiment builders and detector placement."""

from .census import census
from .experiments import (
    NONLOCAL_CNOT,
    TELEPORT,
    build_experiment,
    build_nonlocal_cnot_experiment,
    build_teleportation_experiment,
)
from .frame_tracker import place_detectors
from .models import (
    CircuitProgram,
    DeterminismError,
    GateCensus,
    Instruction,
    NoiseParams,
    Opcode,
)
from .syndrome import build_syndrome_round
from .text_format import CircuitParseError, parse, serialize

__all__ = [
    "NONLOCAL_CNOT",
    "TELEPORT",
    "CircuitParseError",
    "CircuitProgram",
    "DeterminismError",
    "GateCensus",
    "Instruction",
    "NoiseParams",
    "Opcode",
    "build_experiment",
    "build_nonlocal_cnot_experiment",
    "build_syndrome_round",
    "build_teleportation_experiment",
    "census",
    "parse",
    "place_detectors",
    "serialize",
]
