"""Logical operator extraction for CSS codes."""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from domain.linalg import BitMatrix, BitVector, inverse, kernel_basis, rank

from .models import CodeConstructionError, StabilizerCode


def _complete_basis(
    stabilizers: BitMatrix, candidates: List[BitVector], count: int
) -> List[BitVector]:
    """Pick ``count`` candidates independent of each other and the stabilizers."""
    chosen: List[BitVector] = []
    current = stabilizers.to_dense()
    base = rank(stabilizers)
    for vector in candidates:
        if len(chosen) == count:
            break
        trial = np.vstack([current, vector.to_dense()[None, :]])
        if rank(BitMatrix.from_dense(trial)) > base:
            chosen.append(vector)
            current = trial
            base += 1
    if len(chosen) != count:
        raise CodeConstructionError(
            f"found {len(chosen)} independent logicals, expected {count}"
        )
    return chosen


def find_logical_operators(
    h_x: BitMatrix, h_z: BitMatrix
) -> Tuple[List[BitVector], List[BitVector]]:
    """Return symplectically paired (logical_z, logical_x) representatives.

    Z logicals live in ker(H_X) outside rowspace(H_Z); X logicals in ker(H_Z)
    outside rowspace(H_X). The X set is then rotated so that Z_i . X_j = delta_ij.
    """
    n = h_x.cols
    k = n - rank(h_x) - rank(h_z)
    if k == 0:
        return [], []
    # Lightest kernel vectors first keeps the representatives readable
    z_pool = sorted(kernel_basis(h_x), key=lambda v: v.weight())
    x_pool = sorted(kernel_basis(h_z), key=lambda v: v.weight())
    logical_z = _complete_basis(h_z, z_pool, k)
    logical_x = _complete_basis(h_x, x_pool, k)
    return logical_z, pair_logicals(logical_z, logical_x)


def pair_logicals(
    logical_z: List[BitVector], logical_x: List[BitVector]
) -> List[BitVector]:
    """Rotate ``logical_x`` so that it is dual to ``logical_z``."""
    k = len(logical_z)
    if k == 0:
        return []
    lz = np.array([v.to_dense() for v in logical_z], dtype=np.int64)
    lx = np.array([v.to_dense() for v in logical_x], dtype=np.int64)
    pairing = BitMatrix.from_dense((lz @ lx.T) & 1)
    try:
        inv = inverse(pairing).to_dense().astype(np.int64)
    except ValueError as exc:
        raise CodeConstructionError("logical operators are not independent") from exc
    rotated = (inv.T @ lx) & 1
    return [BitVector.from_dense(row) for row in rotated]


def logical_operators(code: StabilizerCode) -> Tuple[List[BitVector], List[BitVector]]:
    """Logical representatives of ``code``, computing them if it carries none."""
    if len(code.logical_z) == code.k and len(code.logical_x) == code.k:
        return list(code.logical_z), list(code.logical_x)
    return find_logical_operators(code.h_x, code.h_z)
