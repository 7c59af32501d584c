from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from domain.circuit.models import CircuitProgram, DeterminismError
from domain.sim.models import FlipSignature, ShotBatch
from domain.sim.sampler import masks_to_batch, shot_generator, stream_key
from domain.sim.signatures import SignatureTable, build_signature_table

logger = logging.getLogger(__name__)


def merge_probability(p: float, q: float) -> float:
    """Probability that exactly one of two independent events occurs."""
    return p + q - 2.0 * p * q


def _column_matrix(columns: Sequence[Sequence[int]], rows: int) -> sp.csc_matrix:
    indptr = np.zeros(len(columns) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(c) for c in columns])
    flat = (i for c in columns for i in c)
    indices = np.fromiter(flat, dtype=np.int64, count=int(indptr[-1]))
    data = np.ones(indices.size, dtype=np.uint8)
    return sp.csc_matrix((data, indices, indptr), shape=(rows, len(columns)))


class DetectorErrorModel:
    """Mechanism columns over detectors (``pcm``) and observables (``obs``)."""

    def __init__(
        self,
        detector_count: int,
        observable_count: int,
        detector_columns: Sequence[Sequence[int]],
        observable_columns: Sequence[Sequence[int]],
        priors: Sequence[float],
    ) -> None:
        if not len(detector_columns) == len(observable_columns) == len(priors):
            raise ValueError("column lists and priors must have equal length")
        self.detector_count = detector_count
        self.observable_count = observable_count
        self.detector_columns: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(sorted(c)) for c in detector_columns
        )
        self.observable_columns: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(sorted(c)) for c in observable_columns
        )
        self.priors = np.asarray(priors, dtype=np.float64)
        for c in self.detector_columns:
            if c and not 0 <= c[-1] < detector_count:
                raise ValueError(f"detector index outside 0..{detector_count - 1}")
        for c in self.observable_columns:
            if c and not 0 <= c[-1] < observable_count:
                raise ValueError(f"observable index outside 0..{observable_count - 1}")
        self.pcm = _column_matrix(self.detector_columns, detector_count)
        self.obs = _column_matrix(self.observable_columns, observable_count)

    @property
    def mechanism_count(self) -> int:
        return len(self.priors)

    def column(self, j: int) -> FlipSignature:
        return FlipSignature(
            frozenset(self.detector_columns[j]), frozenset(self.observable_columns[j])
        )

    def syndrome(self, mechanisms: Sequence[int]) -> np.ndarray:
        """Detector parity of a set of mechanisms."""
        s = np.zeros(self.detector_count, dtype=np.uint8)
        for j in mechanisms:
            for d in self.detector_columns[j]:
                s[d] ^= 1
        return s

    def observable_flips(self, mechanisms: Sequence[int]) -> np.ndarray:
        flips = np.zeros(self.observable_count, dtype=np.uint8)
        for j in mechanisms:
            for o in self.observable_columns[j]:
                flips[o] ^= 1
        return flips

    def without_mechanism(self, j: int) -> "DetectorErrorModel":
        keep = [i for i in range(self.mechanism_count) if i != j]
        return DetectorErrorModel(
            self.detector_count,
            self.observable_count,
            [self.detector_columns[i] for i in keep],
            [self.observable_columns[i] for i in keep],
            self.priors[keep],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DetectorErrorModel):
            return NotImplemented
        return (
            self.detector_count == other.detector_count
            and self.observable_count == other.observable_count
            and self.detector_columns == other.detector_columns
            and self.observable_columns == other.observable_columns
            and bool(np.array_equal(self.priors, other.priors))
        )

    def __repr__(self) -> str:
        return (
            f"DetectorErrorModel(detectors={self.detector_count}, "
            f"observables={self.observable_count}, mechanisms={self.mechanism_count})"
        )


def extract_dem(
    program: CircuitProgram, table: Optional[SignatureTable] = None
) -> DetectorErrorModel:
    """Merge every noise component into one column per distinct signature.

    Columns keep the order in which their signature first appears; components
    with an empty signature are dropped. A merged prior above 0.5 is rejected.
    """
    if table is None:
        table = build_signature_table(program)
    if table.nondeterministic:
        raise DeterminismError(
            "cannot extract a model from a non-deterministic program"
        )
    merged: Dict[int, float] = {}
    for channel in table.channels:
        p = channel.component_prob
        if p <= 0:
            continue
        for mask in channel.signatures:
            if mask:
                merged[mask] = merge_probability(merged.get(mask, 0.0), p)
    too_likely = [q for q in merged.values() if q > 0.5]
    if too_likely:
        raise ValueError(
            f"{len(too_likely)} mechanisms have a prior above 0.5 "
            f"(largest {max(too_likely):.3g}); lower the noise strength"
        )
    detector_columns: List[Tuple[int, ...]] = []
    observable_columns: List[Tuple[int, ...]] = []
    for mask in merged:
        signature = FlipSignature.from_mask(mask, table.detector_count)
        detector_columns.append(tuple(signature.detectors))
        observable_columns.append(tuple(signature.observables))
    model = DetectorErrorModel(
        table.detector_count,
        table.observable_count,
        detector_columns,
        observable_columns,
        list(merged.values()),
    )
    logger.info(
        "extracted model: %d detectors, %d mechanisms",
        model.detector_count,
        model.mechanism_count,
    )
    return model


def sample_from_dem(
    model: DetectorErrorModel, shots: int, seed: int, first_shot: int = 0
) -> ShotBatch:
    """Independent Bernoulli draw per mechanism, keyed like the circuit sampler."""
    if shots < 0:
        raise ValueError(f"shot count must be non-negative, got {shots}")
    masks_by_column = [
        FlipSignature(frozenset(d), frozenset(o)).to_mask(model.detector_count)
        for d, o in zip(model.detector_columns, model.observable_columns)
    ]
    key = stream_key(seed)
    masks: List[int] = []
    for shot in range(first_shot, first_shot + shots):
        mask = 0
        if model.mechanism_count:
            u = shot_generator(key, shot).random(model.mechanism_count)
            for j in np.flatnonzero(u < model.priors).tolist():
                mask ^= masks_by_column[j]
        masks.append(mask)
    return masks_to_batch(masks, model.detector_count, model.observable_count)
