"""Ordered-statistics post-processing of BP posteriors."""

from __future__ import annotations

import logging
from itertools import combinations, product
from typing import List, Optional, Sequence

import numpy as np

from domain.dem.model import DetectorErrorModel
from domain.linalg import BitMatrix, row_reduce

from .bp import Syndrome, as_bits, prior_llrs
from .config import DecodeOutcome, OsdConfig

logger = logging.getLogger(__name__)


def reliability_order(posteriors: Sequence[float]) -> np.ndarray:
    """Columns from most to least likely flipped; ties keep column order."""
    return np.argsort(-np.asarray(posteriors, dtype=np.float64), kind="stable")


def osd_postprocess(
    model: DetectorErrorModel,
    posteriors: Sequence[float],
    syndrome: Syndrome,
    cfg: Optional[OsdConfig] = None,
    dense: Optional[np.ndarray] = None,
) -> DecodeOutcome:
    """Lowest-cost syndrome-consistent estimate among the OSD candidates.

    Cost is the sum of ``log((1 - p) / p)`` over the chosen mechanisms. The
    OSD-0 solution is examined first and wins ties.
    """
    cfg = cfg or OsdConfig()
    bits = as_bits(syndrome)
    m = model.mechanism_count
    if dense is None:
        dense = model.pcm.toarray().astype(np.uint8)
    order = reliability_order(posteriors)
    augmented = BitMatrix.from_dense(np.hstack([dense, bits[:, None]]))
    reduced, pivots = row_reduce(augmented, order.tolist())
    rank = len(pivots)
    if reduced.column(m)[rank:].any():
        logger.warning("syndrome is outside the column space of the model")
    table = reduced.to_dense()[:rank]
    target = table[:, m].astype(np.int64)
    pivot_cols = np.asarray(pivots, dtype=np.int64)
    is_pivot = np.zeros(m, dtype=bool)
    is_pivot[pivot_cols] = True
    free = order[~is_pivot[order]]

    weights = prior_llrs(model.priors)
    pivot_weights = weights[pivot_cols]

    best_cost = float(pivot_weights @ target)
    best_pivots = target
    best_free: List[int] = []

    def consider(cost: float, solution: np.ndarray, chosen: List[int]) -> None:
        nonlocal best_cost, best_pivots, best_free
        if cost < best_cost:
            best_cost, best_pivots, best_free = cost, solution, chosen

    head = free[: cfg.order].tolist()
    if cfg.order > 0 and free.size:
        if cfg.mode == "combination-sweep":
            flips = target[:, None] ^ table[:, free]
            costs = pivot_weights @ flips + weights[free]
            j = int(np.argmin(costs))
            consider(float(costs[j]), flips[:, j], [int(free[j])])
            for a, b in combinations(head, 2):
                solution = target ^ table[:, a] ^ table[:, b]
                cost = pivot_weights @ solution + weights[a] + weights[b]
                consider(float(cost), solution, [a, b])
        else:
            patterns = list(product((0, 1), repeat=len(head)))[1:]
            configs = np.array(patterns, dtype=np.int64)
            shifts = table[:, head].astype(np.int64) @ configs.T
            solutions = (target[:, None] + shifts) % 2
            costs = pivot_weights @ solutions + configs @ weights[head]
            j = int(np.argmin(costs))
            chosen = [head[i] for i in np.flatnonzero(configs[j]).tolist()]
            consider(float(costs[j]), solutions[:, j], chosen)

    estimate = np.zeros(m, dtype=np.uint8)
    estimate[pivot_cols] = best_pivots
    estimate[best_free] = 1
    support = np.flatnonzero(estimate).tolist()
    return DecodeOutcome(
        mechanism_estimate=support,
        predicted_obs_flips=model.observable_flips(support),
        bp_converged=False,
        iterations_used=0,
        osd_used=True,
    )
