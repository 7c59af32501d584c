"""Upper bounds on circuit-level distance.

For a mechanism ``i`` the decoder explains column ``i`` using the other
mechanisms only; ``{i}`` plus that explanation has an empty syndrome, and
when it also flips an observable it is an undetectable logical error. The
lightest one found bounds the circuit distance from above.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from domain.constants import DISTANCE_SEARCH_BP_ITERATIONS
from domain.decoder import BpConfig, BpOsdDecoder, OsdConfig
from domain.dem.model import DetectorErrorModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistanceWitness:
    weight: int
    mechanisms: Tuple[int, ...]
    observables_flipped: Tuple[int, ...]

    @classmethod
    def from_mechanisms(
        cls, model: DetectorErrorModel, mechanisms: Tuple[int, ...]
    ) -> "DistanceWitness":
        flips = np.flatnonzero(model.observable_flips(mechanisms)).tolist()
        return cls(len(mechanisms), tuple(sorted(mechanisms)), tuple(flips))

    def verify(self, model: DetectorErrorModel) -> bool:
        """Empty syndrome and a nonzero observable flip, by direct multiplication."""
        e = np.zeros(model.mechanism_count, dtype=np.int64)
        e[list(self.mechanisms)] = 1
        syndrome = (model.pcm @ e) % 2
        flips = (model.obs @ e) % 2
        return (
            not syndrome.any()
            and bool(flips.any())
            and tuple(np.flatnonzero(flips).tolist()) == self.observables_flipped
        )


def search_circuit_distance(
    model: DetectorErrorModel,
    effort: Optional[int] = None,
    bp: Optional[BpConfig] = None,
    osd: Optional[OsdConfig] = None,
) -> Optional[DistanceWitness]:
    """Lightest undetectable logical error found from the first ``effort`` mechanisms.

    Returns None when no candidate flips an observable; that is not a proof
    of anything about the distance.
    """
    if model.observable_count < 1:
        raise ValueError("model has no observables")
    bp = bp or BpConfig(max_iterations=DISTANCE_SEARCH_BP_ITERATIONS)
    count = model.mechanism_count
    if effort is not None:
        count = min(effort, count)
    best: Optional[DistanceWitness] = None
    for i in range(count):
        if best is not None and best.weight == 1:
            break
        rest = model.without_mechanism(i)
        outcome = BpOsdDecoder(rest, bp, osd).decode(model.syndrome([i]))
        candidate = {i} ^ {j if j < i else j + 1 for j in outcome.mechanism_estimate}
        mechanisms = tuple(sorted(candidate))
        if model.syndrome(mechanisms).any():
            continue
        if not model.observable_flips(mechanisms).any():
            continue
        if best is None or len(mechanisms) < best.weight:
            best = DistanceWitness.from_mechanisms(model, mechanisms)
            logger.debug("mechanism %d gives a weight-%d witness", i, best.weight)
    if best is None:
        logger.warning("no undetectable logical error among %d mechanisms", count)
    else:
        logger.info("circuit distance is at most %d", best.weight)
    return best


def witness_report(
    witness: DistanceWitness, model: Optional[DetectorErrorModel] = None
) -> str:
    data: Dict[str, object] = {
        "weight": witness.weight,
        "mechanisms": list(witness.mechanisms),
        "observables": list(witness.observables_flipped),
    }
    if model is not None:
        data["priors"] = [float(model.priors[j]) for j in witness.mechanisms]
        data["verified"] = witness.verify(model)
    return json.dumps(data, indent=2)
