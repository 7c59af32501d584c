from .csv_result_repository import CsvResultRepository
from .json_result_repository import JsonResultRepository

__all__ = ["CsvResultRepository", "JsonResultRepository"]
