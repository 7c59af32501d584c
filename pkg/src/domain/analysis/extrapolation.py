from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

# Rounding slack before ceil()
_EPS = 1e-9


@dataclass(frozen=True)
class ExtrapolationRow:
    circuit: str
    p: float
    ebit_ratio: float
    target: float
    distance: int


def required_distance(
    p: float,
    p_th: float,
    d_0: int,
    p_0: float,
    p_star: float,
    odd: bool = False,
) -> int:
    """Distance reaching logical error rate ``p_star``.

    The anchor ``(d_0, p_0)`` is a simulated distance and its logical error rate.
    """
    if not 0 < p < p_th:
        raise ValueError(f"p={p} must lie strictly between 0 and the threshold {p_th}")
    if not 0 < p_star <= p_0:
        raise ValueError(f"target {p_star} must lie in (0, {p_0}]")
    value = d_0 + 2.0 * math.log(p_star / p_0) / math.log(p / p_th)
    d = math.ceil(value - _EPS)
    if odd and d % 2 == 0:
        d += 1
    return d


def distance_table(
    p: float,
    p_th: float,
    anchor: Tuple[int, float],
    targets: Sequence[float],
    circuit: str = "",
    ebit_ratio: float = 1.0,
    odd: bool = False,
) -> List[ExtrapolationRow]:
    d_0, p_0 = anchor
    return [
        ExtrapolationRow(
            circuit=circuit,
            p=p,
            ebit_ratio=ebit_ratio,
            target=target,
            distance=required_distance(p, p_th, d_0, p_0, target, odd),
        )
        for target in targets
    ]
