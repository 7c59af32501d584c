from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from application.experiment_service import ExperimentService, derive_seed
from domain.analysis.results import ResultRow
from domain.constants import EBIT_RATIOS

logger = logging.getLogger(__name__)


@dataclass
class SweepGrid:
    codes: Sequence[str]
    circuit: str
    p_values: Sequence[float]
    ebit_ratios: Sequence[float] = EBIT_RATIOS
    ebit_p: Optional[float] = None

    def cells(self) -> List[Tuple[str, float, float]]:
        out: List[Tuple[str, float, float]] = []
        for code in self.codes:
            for p in self.p_values:
                if self.ebit_p is not None:
                    out.append((code, p, self.ebit_p))
                    continue
                for ratio in self.ebit_ratios:
                    out.append((code, p, min(1.0, ratio * p)))
        return out


def _run_guarded(
    experiments: ExperimentService,
    code: str,
    circuit: str,
    p: float,
    p_ebit: float,
    shots: int,
    seed: int,
) -> ResultRow:
    try:
        return experiments.run_cell(code, circuit, p, p_ebit, shots, seed)
    except Exception as e:
        logger.warning(
            "cell %s %s p=%g p_ebit=%g failed: %s", code, circuit, p, p_ebit, e
        )
        reason = str(e) or type(e).__name__
        return ResultRow.failed(code, circuit, p, p_ebit, shots, seed, reason)


@dataclass
class SweepService:
    """Runs a grid of cells; a failing cell becomes a row carrying its error.

    With more than one worker the cells run side by side, each on a serial
    experiment service; rows keep the grid order either way.
    """

    experiments: ExperimentService = field(default_factory=ExperimentService)

    def sweep(self, grid: SweepGrid, shots: int, seed: int) -> List[ResultRow]:
        if shots < 1:
            raise ValueError(f"shots must be positive, got {shots}")
        jobs = [
            (
                code,
                grid.circuit,
                p,
                p_ebit,
                shots,
                derive_seed(seed, code, grid.circuit, repr(p), repr(p_ebit)),
            )
            for code, p, p_ebit in grid.cells()
        ]
        workers = min(self.experiments.workers, len(jobs))
        if workers <= 1:
            return [_run_guarded(self.experiments, *job) for job in jobs]
        serial = ExperimentService(
            workers=1,
            bp=self.experiments.bp,
            osd=self.experiments.osd,
            chunk=self.experiments.chunk,
        )
        logger.info("running %d cells on %d workers", len(jobs), workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_guarded, serial, *job) for job in jobs]
            return [f.result() for f in futures]
