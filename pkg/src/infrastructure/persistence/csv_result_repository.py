import csv
import io
from pathlib import Path
from typing import List

from domain.analysis.results import RESULT_FIELDS, ResultRepository, ResultRow


class CsvResultRepository(ResultRepository):
    """CSV repository for result rows, one cell per line."""

    def dumps(self, rows: List[ResultRow]) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=RESULT_FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            record = row.to_dict()
            for key in ("p", "p_ebit", "ler", "ler_lo", "ler_hi"):
                record[key] = repr(float(record[key]))
            writer.writerow(record)
        return buffer.getvalue()

    def save(self, rows: List[ResultRow], path: Path) -> None:
        with path.open("w", encoding="utf-8", newline="") as f:
            f.write(self.dumps(rows))

    def load(self, path: Path) -> List[ResultRow]:
        with path.open("r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            return [ResultRow.from_dict(item) for item in reader]
