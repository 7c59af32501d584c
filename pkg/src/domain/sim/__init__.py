"""Pauli-frame noise sampling for Clifford circuits with detectors."""

from .batch_format import (
    read_batch_binary,
    read_batch_text,
    write_batch_binary,
    write_batch_text,
)
from .models import FlipSignature, PauliEvent, ShotBatch
from .propagate import propagate
from .sampler import sample, sample_table
from .signatures import (
    NoiseChannel,
    SignatureTable,
    build_signature_table,
    check_determinism,
    find_nondeterministic,
)

__all__ = [
    "FlipSignature",
    "NoiseChannel",
    "PauliEvent",
    "ShotBatch",
    "SignatureTable",
    "build_signature_table",
    "check_determinism",
    "find_nondeterministic",
    "propagate",
    "read_batch_binary",
    "read_batch_text",
    "sample",
    "sample_table",
    "write_batch_binary",
    "write_batch_text",
]
