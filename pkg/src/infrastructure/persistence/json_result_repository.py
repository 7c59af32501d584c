import json
import math
from pathlib import Path
from typing import Any, Dict, List

from domain.analysis.results import ResultRepository, ResultRow


def _finite_or_none(value: Any) -> Any:
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


class JsonResultRepository(ResultRepository):
    """File-based JSON repository for result rows."""

    def dumps(self, rows: List[ResultRow]) -> str:
        data: Dict[str, Any] = {
            "rows": [
                {k: _finite_or_none(v) for k, v in row.to_dict().items()}
                for row in rows
            ]
        }
        return json.dumps(data, indent=2) + "\n"

    def save(self, rows: List[ResultRow], path: Path) -> None:
        with path.open("w", encoding="utf-8") as f:
            f.write(self.dumps(rows))

    def load(self, path: Path) -> List[ResultRow]:
        with path.open("r", encoding="utf-8") as f:
            data = json.load(f)
        return [ResultRow.from_dict(item) for item in data.get("rows", [])]
