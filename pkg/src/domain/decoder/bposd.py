from __future__ import annotations

import logging
from dataclasses import replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from domain.dem.model import DetectorErrorModel
from domain.sim.models import ShotBatch

from .bp import Syndrome, TannerGraph, as_bits, bp_decode, prior_llrs
from .config import BpConfig, DecodeOutcome, OsdConfig
from .osd import osd_postprocess

logger = logging.getLogger(__name__)


class BpOsdDecoder:
    """BP followed by OSD on one model, keeping the cheaper of the two answers.

    Repeated syndromes are decoded once.
    """

    def __init__(
        self,
        model: DetectorErrorModel,
        bp: Optional[BpConfig] = None,
        osd: Optional[OsdConfig] = None,
    ) -> None:
        self.model = model
        self.bp = bp or BpConfig()
        self.osd = osd or OsdConfig()
        self.graph = TannerGraph(model.pcm)
        self._dense = model.pcm.toarray().astype(np.uint8)
        self._cache: Dict[bytes, DecodeOutcome] = {}
        self._weights = prior_llrs(model.priors)
        self.osd_runs = 0

    def clear_cache(self) -> None:
        self._cache.clear()

    def decode(self, syndrome: Syndrome) -> DecodeOutcome:
        bits = as_bits(syndrome)
        key = np.packbits(bits).tobytes()
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        result = bp_decode(self.model, bits, self.bp, self.graph)
        support = np.flatnonzero(result.hard_decision).tolist()
        if result.converged and not support:
            outcome = DecodeOutcome(
                [], self.model.observable_flips([]), True, result.iterations
            )
        else:
            self.osd_runs += 1
            solved = osd_postprocess(
                self.model, result.posteriors, bits, self.osd, self._dense
            )
            outcome = replace(
                solved,
                bp_converged=result.converged,
                iterations_used=result.iterations,
            )
            # a converged BP answer is kept only when it is no more costly
            if result.converged and self.cost(support) <= self.cost(
                solved.mechanism_estimate
            ):
                outcome = DecodeOutcome(
                    mechanism_estimate=support,
                    predicted_obs_flips=self.model.observable_flips(support),
                    bp_converged=True,
                    iterations_used=result.iterations,
                )
        self._cache[key] = outcome
        return outcome

    def cost(self, support: List[int]) -> float:
        """Sum of log((1 - p) / p) over the given mechanisms."""
        return float(self._weights[support].sum())


def decode_batch(
    model: DetectorErrorModel,
    batch: ShotBatch,
    bp: Optional[BpConfig] = None,
    osd: Optional[OsdConfig] = None,
    decoder: Optional[BpOsdDecoder] = None,
) -> Tuple[int, np.ndarray]:
    """Count shots whose predicted observable flips miss the sampled ones.

    Returns the failure count and a boolean flag per shot.
    """
    if batch.detector_count != model.detector_count:
        raise ValueError(
            f"batch has {batch.detector_count} detectors, "
            f"model has {model.detector_count}"
        )
    if batch.observable_count != model.observable_count:
        raise ValueError(
            f"batch has {batch.observable_count} observables, "
            f"model has {model.observable_count}"
        )
    decoder = decoder or BpOsdDecoder(model, bp, osd)
    flags = np.zeros(batch.shots, dtype=bool)
    for shot in range(batch.shots):
        outcome = decoder.decode(batch.detector_bits[shot])
        missed = outcome.predicted_obs_flips != batch.observable_bits[shot]
        flags[shot] = bool(np.any(missed))
    fails = int(flags.sum())
    logger.info(
        "decoded %d shots: %d failures (%d OSD runs)",
        batch.shots,
        fails,
        decoder.osd_runs,
    )
    return fails, flags
