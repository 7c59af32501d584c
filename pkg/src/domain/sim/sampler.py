"""Exact channel sampling from a precomputed signature table.

Each shot owns a Philox stream keyed by the run seed with the shot index as
counter, so a shot's outcome does not depend on how shots are split across
batches or workers.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence

import numpy as np

from domain.circuit.models import CircuitProgram

from .models import ShotBatch
from .signatures import SignatureTable, build_signature_table

logger = logging.getLogger(__name__)


def stream_key(seed: int) -> np.ndarray:
    return np.random.SeedSequence(seed).generate_state(2, dtype=np.uint64)


def shot_generator(key: np.ndarray, shot: int) -> np.random.Generator:
    # Shots are 2**128 counter steps apart, far beyond any single shot's draws
    return np.random.Generator(np.random.Philox(key=key, counter=shot << 128))


def masks_to_batch(
    masks: Sequence[int], detector_count: int, observable_count: int
) -> ShotBatch:
    width = detector_count + observable_count
    shots = len(masks)
    if width == 0 or shots == 0:
        return ShotBatch(
            np.zeros((shots, detector_count), dtype=np.uint8),
            np.zeros((shots, observable_count), dtype=np.uint8),
        )
    nbytes = (width + 7) // 8
    raw = b"".join(m.to_bytes(nbytes, "little") for m in masks)
    packed = np.frombuffer(raw, dtype=np.uint8).reshape(shots, nbytes)
    bits = np.unpackbits(packed, axis=1, count=width, bitorder="little")
    return ShotBatch(bits[:, :detector_count], bits[:, detector_count:])


def sample_table(
    table: SignatureTable, shots: int, seed: int, first_shot: int = 0
) -> ShotBatch:
    """Draw ``shots`` shots starting at shot index ``first_shot``."""
    if shots < 0:
        raise ValueError(f"shot count must be non-negative, got {shots}")
    channels = table.channels
    totals = np.array([ch.prob for ch in channels], dtype=np.float64)
    sizes = np.array([len(ch.components) for ch in channels], dtype=np.int64)
    signatures = [ch.signatures for ch in channels]
    key = stream_key(seed)
    masks: List[int] = []
    for shot in range(first_shot, first_shot + shots):
        if not channels:
            masks.append(0)
            continue
        u = shot_generator(key, shot).random(len(channels))
        fired = np.flatnonzero(u < totals)
        mask = 0
        if fired.size:
            # Reuse the uniform to pick the component uniformly within the channel
            scaled = u[fired] / totals[fired] * sizes[fired]
            picks = np.minimum(scaled.astype(np.int64), sizes[fired] - 1)
            for c, j in zip(fired.tolist(), picks.tolist()):
                mask ^= signatures[c][j]
        masks.append(mask)
    return masks_to_batch(masks, table.detector_count, table.observable_count)


def sample(
    program: CircuitProgram,
    shots: int,
    seed: int,
    table: Optional[SignatureTable] = None,
    first_shot: int = 0,
) -> ShotBatch:
    if table is None:
        table = build_signature_table(program)
    batch = sample_table(table, shots, seed, first_shot)
    logger.debug("sampled %d shots (seed=%d, first=%d)", shots, seed, first_shot)
    return batch
