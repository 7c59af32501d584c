"""Logical error rate statistics, thresholds, extrapolation and distance bounds."""

from .distance_search import DistanceWitness, search_circuit_distance, witness_report
from .extrapolation import ExtrapolationRow, distance_table, required_distance
from .results import RESULT_FIELDS, ResultRepository, ResultRow
from .statistics import LerEstimate, ler_interval
from .threshold import NoCrossingError, ScalingFit, fit_threshold, scaling_form

__all__ = [
    "RESULT_FIELDS",
    "DistanceWitness",
    "ExtrapolationRow",
    "LerEstimate",
    "NoCrossingError",
    "ResultRepository",
    "ResultRow",
    "ScalingFit",
    "distance_table",
    "fit_threshold",
    "ler_interval",
    "required_distance",
    "scaling_form",
    "search_circuit_distance",
    "witness_report",
]
