from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import bisect
from scipy.stats import binom

from domain.constants import BAYES_FACTOR

_XTOL = 1e-13


@dataclass(frozen=True)
class LerEstimate:
    """Logical error rate with its likelihood-ratio interval."""

    shots: int
    fails: int
    point: float
    interval_low: float
    interval_high: float

    def overlaps(self, other: "LerEstimate") -> bool:
        if self.interval_low > other.interval_high:
            return False
        return other.interval_low <= self.interval_high


def ler_interval(
    fails: int, shots: int, bayes_factor: float = BAYES_FACTOR
) -> LerEstimate:
    """Rates whose binomial likelihood is within ``bayes_factor`` of the maximum."""
    if shots < 1:
        raise ValueError(f"shots must be positive, got {shots}")
    if not 0 <= fails <= shots:
        raise ValueError(f"fails must lie in 0..{shots}, got {fails}")
    if bayes_factor <= 1.0:
        raise ValueError(f"bayes factor must exceed 1, got {bayes_factor}")
    point = fails / shots
    floor = float(binom.logpmf(fails, shots, point)) - math.log(bayes_factor)

    def excess(q: float) -> float:
        value = float(binom.logpmf(fails, shots, q))
        return value - floor if math.isfinite(value) else -1e300

    low = 0.0 if fails == 0 else bisect(excess, 0.0, point, xtol=_XTOL)
    high = 1.0 if fails == shots else bisect(excess, point, 1.0, xtol=_XTOL)
    return LerEstimate(
        shots=shots,
        fails=fails,
        point=point,
        interval_low=float(low),
        interval_high=float(high),
    )
