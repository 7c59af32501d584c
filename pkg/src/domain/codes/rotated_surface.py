"""Rotated surface codes on a d x d data lattice."""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

import numpy as np

from domain.linalg import BitMatrix, BitVector

from .models import CodeConstructionError, StabilizerCode

logger = logging.getLogger(__name__)

# Corner offsets of a plaquette: TL, TR, BL, BR
_CORNERS = ((0, 0), (0, 1), (1, 0), (1, 1))

Plaquette = Tuple[Optional[int], ...]

# CNOT tick at which each corner is visited
_X_ORDER = (0, 1, 2, 3)
_Z_ORDER = (0, 2, 1, 3)


def _plaquettes(d: int) -> Tuple[List[Plaquette], List[Plaquette]]:
    """Return X and Z plaquettes as per-corner qubit tuples (None off-lattice).

    Plaquette (i, j) covers rows i..i+1 and columns j..j+1 and is X-type when
    i + j is even. Weight-2 plaquettes survive on the top/bottom edges when
    X-type and on the left/right edges when Z-type.
    """
    x_checks: List[Plaquette] = []
    z_checks: List[Plaquette] = []
    for i in range(-1, d):
        for j in range(-1, d):
            corners = tuple(
                (i + di) * d + (j + dj)
                if 0 <= i + di < d and 0 <= j + dj < d
                else None
                for di, dj in _CORNERS
            )
            inside = sum(q is not None for q in corners)
            is_x = (i + j) % 2 == 0
            if inside == 4:
                keep = True
            elif inside == 2:
                horizontal_edge = i in (-1, d - 1)
                keep = is_x if horizontal_edge else not is_x
            else:
                keep = False
            if keep:
                (x_checks if is_x else z_checks).append(corners)
    return x_checks, z_checks


def _matrix(checks: List[Plaquette], n: int) -> BitMatrix:
    dense = np.zeros((len(checks), n), dtype=np.uint8)
    for r, corners in enumerate(checks):
        for q in corners:
            if q is not None:
                dense[r, q] = 1
    return BitMatrix.from_dense(dense)


def _schedule(
    checks: List[Plaquette], order: Tuple[int, ...]
) -> Tuple[Tuple[Optional[int], ...], ...]:
    rows = []
    for corners in checks:
        ticks: List[Optional[int]] = [None] * 4
        for corner, tick in enumerate(order):
            ticks[tick] = corners[corner]
        rows.append(tuple(ticks))
    return tuple(rows)


def build_rotated_sc(d: int) -> StabilizerCode:
    if d < 3 or d % 2 == 0:
        raise CodeConstructionError(f"rotated surface code needs odd d >= 3, got {d}")
    n = d * d
    x_checks, z_checks = _plaquettes(d)
    # Z logical along the top row, X logical down the left column
    logical_z = BitVector.from_indices(n, range(d))
    logical_x = BitVector.from_indices(n, (r * d for r in range(d)))
    relabel = tuple(c * d + (d - 1 - r) for r in range(d) for c in range(d))
    code = StabilizerCode(
        name=f"[[{n},1,{d}]]",
        family="sc",
        h_x=_matrix(x_checks, n),
        h_z=_matrix(z_checks, n),
        logical_z=[logical_z],
        logical_x=[logical_x],
        x_schedule=_schedule(x_checks, _X_ORDER),
        z_schedule=_schedule(z_checks, _Z_ORDER),
        h_relabel=relabel,
        d=d,
        idle_noise=False,
        spec=f"sc d={d}",
    )
    code.validate()
    logger.info("built rotated surface code %s", code.name)
    return code
