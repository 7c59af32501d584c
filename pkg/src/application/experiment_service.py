from __future__ import annotations

import hashlib
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

from domain.analysis.results import ResultRow
from domain.analysis.statistics import ler_interval
from domain.circuit import CircuitProgram, NoiseParams, build_experiment
from domain.codes import StabilizerCode, build_code
from domain.constants import SHOTS_PER_CHUNK, default_workers
from domain.decoder import BpConfig, OsdConfig, decode_batch
from domain.dem import DetectorErrorModel, extract_dem
from domain.sim import SignatureTable, build_signature_table, sample_table

logger = logging.getLogger(__name__)


def derive_seed(root: int, *parts: object) -> int:
    """Stable child seed for a named cell of a run."""
    text = "/".join([str(root), *(str(p) for p in parts)])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little") >> 1


@dataclass
class PreparedCell:
    code: StabilizerCode
    program: CircuitProgram
    table: SignatureTable
    model: DetectorErrorModel

    @property
    def label(self) -> str:
        return self.code.spec or self.code.name


def _count_chunk(
    table: SignatureTable,
    model: DetectorErrorModel,
    bp: BpConfig,
    osd: OsdConfig,
    seed: int,
    first: int,
    count: int,
) -> int:
    batch = sample_table(table, count, seed, first)
    fails, _ = decode_batch(model, batch, bp, osd)
    return fails


class ExperimentService:
    """Runs logical error rate cells: build, extract, sample and decode."""

    def __init__(
        self,
        workers: Optional[int] = None,
        bp: Optional[BpConfig] = None,
        osd: Optional[OsdConfig] = None,
        chunk: int = SHOTS_PER_CHUNK,
    ) -> None:
        self.workers = workers if workers is not None else default_workers()
        self.bp = bp or BpConfig()
        self.osd = osd or OsdConfig()
        if chunk < 1:
            raise ValueError(f"chunk size must be positive, got {chunk}")
        self.chunk = chunk

    def prepare(
        self, code_spec: str, circuit: str, p: float, p_ebit: float
    ) -> PreparedCell:
        code = build_code(code_spec)
        noise = NoiseParams(p=p, p_ebit=p_ebit, idle_enabled=code.idle_noise)
        program = build_experiment(circuit, code, noise)
        table = build_signature_table(program)
        model = extract_dem(program, table)
        return PreparedCell(code, program, table, model)

    def _chunks(self, shots: int) -> List[Tuple[int, int]]:
        starts = range(0, shots, self.chunk)
        return [(first, min(self.chunk, shots - first)) for first in starts]

    def count_failures(self, cell: PreparedCell, shots: int, seed: int) -> int:
        chunks = self._chunks(shots)
        args = (cell.table, cell.model, self.bp, self.osd, seed)
        if self.workers <= 1 or len(chunks) <= 1:
            return sum(_count_chunk(*args, first, count) for first, count in chunks)
        with ProcessPoolExecutor(max_workers=min(self.workers, len(chunks))) as pool:
            futures = [
                pool.submit(_count_chunk, *args, first, count)
                for first, count in chunks
            ]
            return sum(f.result() for f in futures)

    def run_cell(
        self,
        code_spec: str,
        circuit: str,
        p: float,
        p_ebit: float,
        shots: int,
        seed: int,
    ) -> ResultRow:
        if shots < 1:
            raise ValueError(f"shots must be positive, got {shots}")
        cell = self.prepare(code_spec, circuit, p, p_ebit)
        fails = self.count_failures(cell, shots, seed)
        estimate = ler_interval(fails, shots)
        logger.info(
            "%s %s p=%g p_ebit=%g: %d/%d failures",
            cell.label,
            circuit,
            p,
            p_ebit,
            fails,
            shots,
        )
        return ResultRow.from_estimate(cell.label, circuit, p, p_ebit, estimate, seed)
