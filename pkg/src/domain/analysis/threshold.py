"""Threshold estimation from logical error rate curves at several distances.

Curves of successive distances are compared in log-log space; each pair's
crossing is linearly interpolated between the bracketing noise points and
the threshold is the mean over pairs. The prefactor follows by least squares
on ``log P = log alpha + (d + 1) / 2 * log(p / p_th)``.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .statistics import LerEstimate

logger = logging.getLogger(__name__)

Curve = Tuple[int, float, LerEstimate]


class NoCrossingError(ValueError):
    pass


@dataclass(frozen=True)
class ScalingFit:
    p_th: float
    alpha: float
    points: List[Tuple[int, float, float]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.p_th <= 0:
            raise ValueError(f"threshold must be positive, got {self.p_th}")


def scaling_form(p: float, d: int, fit: ScalingFit) -> float:
    return fit.alpha * (p / fit.p_th) ** ((d + 1) / 2)


def _crossing(
    low: Dict[float, float], high: Dict[float, float]
) -> Optional[float]:
    shared = sorted(p for p in set(low) & set(high) if low[p] > 0 and high[p] > 0)
    xs = [math.log(p) for p in shared]
    gaps = [math.log(high[p]) - math.log(low[p]) for p in shared]
    for i, gap in enumerate(gaps):
        if gap == 0.0:
            return shared[i]
        if i and gaps[i - 1] < 0 < gap:
            x0, x1, g0, g1 = xs[i - 1], xs[i], gaps[i - 1], gap
            return math.exp(x0 - g0 * (x1 - x0) / (g1 - g0))
    return None


def fit_threshold(curves: Sequence[Curve]) -> ScalingFit:
    """Estimate ``p_th`` and ``alpha`` from ``(d, p, estimate)`` triples."""
    by_distance: Dict[int, Dict[float, float]] = defaultdict(dict)
    for d, p, estimate in curves:
        by_distance[d][p] = estimate.point
    distances = sorted(by_distance)
    if len(distances) < 2:
        raise ValueError("need curves for at least two distances")
    for d in distances:
        if len(by_distance[d]) < 3:
            raise ValueError(f"distance {d} has fewer than three noise points")

    crossings: List[float] = []
    for d_low, d_high in zip(distances, distances[1:]):
        crossing = _crossing(by_distance[d_low], by_distance[d_high])
        if crossing is None:
            logger.warning("curves d=%d and d=%d do not cross", d_low, d_high)
        else:
            logger.debug("d=%d/d=%d cross at p=%.4g", d_low, d_high, crossing)
            crossings.append(crossing)
    if not crossings:
        raise NoCrossingError(f"no curve crossing among distances {distances}")
    p_th = float(np.mean(crossings))

    points = [
        (d, rate, p)
        for d in distances
        for p, rate in sorted(by_distance[d].items())
        if rate > 0
    ]
    residuals = [
        math.log(rate) - (d + 1) / 2 * math.log(p / p_th) for d, rate, p in points
    ]
    alpha = math.exp(float(np.mean(residuals))) if residuals else 0.0
    logger.info(
        "threshold p_th=%.4g alpha=%.4g from %d crossings", p_th, alpha, len(crossings)
    )
    return ScalingFit(p_th=p_th, alpha=alpha, points=points)
