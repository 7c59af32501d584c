from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Protocol

from .statistics import LerEstimate

RESULT_FIELDS = (
    "code",
    "circuit",
    "p",
    "p_ebit",
    "shots",
    "fails",
    "ler",
    "ler_lo",
    "ler_hi",
    "seed",
    "error",
)


@dataclass
class ResultRow:
    """One (code, circuit, p, p_ebit) cell of a logical error rate run."""

    code: str
    circuit: str
    p: float
    p_ebit: float
    shots: int
    fails: int
    ler: float
    ler_lo: float
    ler_hi: float
    seed: int
    error: str = ""

    @classmethod
    def from_estimate(
        cls,
        code: str,
        circuit: str,
        p: float,
        p_ebit: float,
        estimate: LerEstimate,
        seed: int,
    ) -> "ResultRow":
        return cls(
            code=code,
            circuit=circuit,
            p=p,
            p_ebit=p_ebit,
            shots=estimate.shots,
            fails=estimate.fails,
            ler=estimate.point,
            ler_lo=estimate.interval_low,
            ler_hi=estimate.interval_high,
            seed=seed,
        )

    @classmethod
    def failed(
        cls,
        code: str,
        circuit: str,
        p: float,
        p_ebit: float,
        shots: int,
        seed: int,
        error: str,
    ) -> "ResultRow":
        nan = float("nan")
        return cls(code, circuit, p, p_ebit, shots, 0, nan, nan, nan, seed, error)

    @property
    def ok(self) -> bool:
        return not self.error

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ResultRow":
        kwargs: Dict[str, Any] = {}
        for f in fields(cls):
            raw = data.get(f.name, "")
            if f.name in ("shots", "fails", "seed"):
                kwargs[f.name] = int(raw)
            elif f.name in ("code", "circuit", "error"):
                kwargs[f.name] = "" if raw is None else str(raw)
            else:
                kwargs[f.name] = float("nan") if raw in ("", None) else float(raw)
        return cls(**kwargs)

    def estimate(self) -> Optional[LerEstimate]:
        if not self.ok:
            return None
        return LerEstimate(self.shots, self.fails, self.ler, self.ler_lo, self.ler_hi)


class ResultRepository(Protocol):
    def dumps(self, rows: List[ResultRow]) -> str: ...

    def save(self, rows: List[ResultRow], path: Path) -> None: ...

    def load(self, path: Path) -> List[ResultRow]: ...
