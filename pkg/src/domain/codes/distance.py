"""Exhaustive minimum-weight logical search for small codes."""

from __future__ import annotations

import logging
from itertools import combinations, islice
from math import comb
from typing import Iterator, Optional

import numpy as np

from domain.constants import DISTANCE_CHECK_BUDGET

from .models import StabilizerCode

logger = logging.getLogger(__name__)

_CHUNK = 1 << 15


class ResourceGuardError(ValueError):
    """Raised when an exhaustive search would exceed its candidate budget."""


def _chunks(n: int, weight: int) -> Iterator[np.ndarray]:
    source = combinations(range(n), weight)
    while True:
        block = list(islice(source, _CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


def _has_logical(checks: np.ndarray, logicals: np.ndarray, weight: int) -> bool:
    """True if a weight-``weight`` support commutes with ``checks``.

    The support must also anticommute with at least one row of ``logicals``.
    """
    n = checks.shape[1]
    for block in _chunks(n, weight):
        syndrome = checks[:, block].sum(axis=2) & 1
        flips = logicals[:, block].sum(axis=2) & 1
        hit = ~syndrome.any(axis=0) & flips.any(axis=0)
        if hit.any():
            return True
    return False


def min_logical_weight_bruteforce(
    code: StabilizerCode, w_max: int, budget: int = DISTANCE_CHECK_BUDGET
) -> Optional[int]:
    """Smallest weight <= ``w_max`` of a nontrivial logical, or None.

    CSS structure lets X-type and Z-type supports be searched separately:
    a mixed Pauli of minimum weight can always be replaced by its X or Z part.
    """
    n = code.n
    candidates = 2 * sum(comb(n, w) for w in range(1, w_max + 1))
    if candidates > budget:
        raise ResourceGuardError(
            f"{candidates} candidates for n={n}, w_max={w_max} exceed budget {budget}"
        )
    if code.k == 0:
        return None
    h_x = code.h_x.to_dense().astype(np.int32)
    h_z = code.h_z.to_dense().astype(np.int32)
    l_z = np.array([v.to_dense() for v in code.logical_z], dtype=np.int32)
    l_x = np.array([v.to_dense() for v in code.logical_x], dtype=np.int32)
    for weight in range(1, w_max + 1):
        # X-type operators must commute with Z checks and flip some Z logical
        if _has_logical(h_z, l_z, weight) or _has_logical(h_x, l_x, weight):
            logger.info("%s: logical of weight %d found", code.name, weight)
            return weight
    return None
