from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from domain.constants import BP_MAX_ITERATIONS, MIN_SUM_SCALING, OSD_ORDER

BP_VARIANTS = ("product-sum", "min-sum")
BP_SCHEDULES = ("parallel", "serial")
OSD_MODES = ("combination-sweep", "exhaustive")


@dataclass(frozen=True)
class BpConfig:
    max_iterations: int = BP_MAX_ITERATIONS
    variant: str = "product-sum"
    scaling: float = MIN_SUM_SCALING  # min-sum only
    schedule: str = "parallel"

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.variant not in BP_VARIANTS:
            raise ValueError(f"unknown BP variant {self.variant!r}")
        if self.schedule not in BP_SCHEDULES:
            raise ValueError(f"unknown BP schedule {self.schedule!r}")
        if not 0.0 < self.scaling <= 1.0:
            raise ValueError(f"min-sum scaling must lie in (0, 1], got {self.scaling}")


@dataclass(frozen=True)
class OsdConfig:
    order: int = OSD_ORDER
    mode: str = "combination-sweep"

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError(f"OSD order must be >= 0, got {self.order}")
        if self.mode not in OSD_MODES:
            raise ValueError(f"unknown OSD mode {self.mode!r}")


@dataclass
class BpResult:
    posteriors: np.ndarray
    hard_decision: np.ndarray
    converged: bool
    iterations: int


@dataclass
class DecodeOutcome:
    """Mechanism estimate of one syndrome and the observable flips it implies."""

    mechanism_estimate: List[int]
    predicted_obs_flips: np.ndarray
    bp_converged: bool
    iterations_used: int
    osd_used: bool = False
