"""Detector error models: merged mechanism columns over detectors."""

from .model import (
    DetectorErrorModel,
    extract_dem,
    merge_probability,
    sample_from_dem,
)
from .text_format import DemParseError, parse_dem, serialize_dem

__all__ = [
    "DemParseError",
    "DetectorErrorModel",
    "extract_dem",
    "merge_probability",
    "parse_dem",
    "sample_from_dem",
    "serialize_dem",
]
