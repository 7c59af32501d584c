"""Bivariate-bicycle codes over the group algebra of Z_l x Z_m."""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from domain.linalg import BitMatrix

from .logicals import find_logical_operators
from .models import BBParams, CodeConstructionError, MonomialTerm, StabilizerCode

logger = logging.getLogger(__name__)

# Direction per CNOT tick over the terms (A1, A2, A3, B1, B2, B3); None is idle
X_DIRECTIONS: Tuple[Optional[int], ...] = (None, 1, 4, 3, 5, 0, 2)
Z_DIRECTIONS: Tuple[Optional[int], ...] = (3, 5, 0, 1, 2, 4, None)


def _shift(size: int, power: int) -> np.ndarray:
    return np.roll(np.eye(size, dtype=np.uint8), power % size, axis=1)


def monomial_matrix(term: MonomialTerm, l: int, m: int) -> np.ndarray:
    """Permutation matrix of x^i y^j with x = S_l (x) I_m and y = I_l (x) S_m."""
    return np.kron(_shift(l, term.x_exp), _shift(m, term.y_exp))


def polynomial_matrix(terms: Sequence[MonomialTerm], l: int, m: int) -> np.ndarray:
    total = np.zeros((l * m, l * m), dtype=np.uint8)
    for term in terms:
        total ^= monomial_matrix(term, l, m)
    return total


class _Group:
    """Index arithmetic on Z_l x Z_m, element (i, j) stored at i*m + j."""

    def __init__(self, l: int, m: int) -> None:
        self.l = l
        self.m = m

    def add(self, g: int, term: MonomialTerm, sign: int = 1) -> int:
        i, j = divmod(g, self.m)
        row = (i + sign * term.x_exp) % self.l
        return row * self.m + (j + sign * term.y_exp) % self.m

    def negate(self, g: int) -> int:
        i, j = divmod(g, self.m)
        return ((-i) % self.l) * self.m + (-j) % self.m


def _schedules(params: BBParams) -> Tuple[Tuple[Tuple[Optional[int], ...], ...], ...]:
    group = _Group(params.l, params.m)
    half = params.l * params.m
    terms = list(params.a_terms) + list(params.b_terms)

    def x_target(g: int, direction: int) -> int:
        # Row g of A (B) has its ones at g + alpha (g + beta)
        if direction < 3:
            return group.add(g, terms[direction])
        return half + group.add(g, terms[direction])

    def z_target(g: int, direction: int) -> int:
        # Row g of B^T sits on left qubits g - beta; row g of A^T on right g - alpha
        if direction < 3:
            return group.add(g, terms[3 + direction], sign=-1)
        return half + group.add(g, terms[direction - 3], sign=-1)

    x_schedule = tuple(
        tuple(None if d is None else x_target(g, d) for d in X_DIRECTIONS)
        for g in range(half)
    )
    z_schedule = tuple(
        tuple(None if d is None else z_target(g, d) for d in Z_DIRECTIONS)
        for g in range(half)
    )
    return x_schedule, z_schedule


def _relabel(params: BBParams) -> Tuple[int, ...]:
    group = _Group(params.l, params.m)
    half = params.l * params.m
    left = [half + group.negate(g) for g in range(half)]
    right = [group.negate(g) for g in range(half)]
    return tuple(left + right)


def build_bb(
    params: BBParams, name: Optional[str] = None, d: Optional[int] = None
) -> StabilizerCode:
    """Build the BB code with H_X = [A|B] and H_Z = [B^T|A^T]."""
    params.validate()
    l, m = params.l, params.m
    a_terms = tuple(t.reduced(l, m) for t in params.a_terms)
    b_terms = tuple(t.reduced(l, m) for t in params.b_terms)
    params = BBParams(l, m, a_terms, b_terms)
    a = polynomial_matrix(a_terms, l, m)
    b = polynomial_matrix(b_terms, l, m)
    if np.any((a.astype(np.int64) @ b + b.astype(np.int64) @ a) & 1):
        raise CodeConstructionError("A and B do not commute")
    h_x = BitMatrix.from_dense(np.hstack([a, b]))
    h_z = BitMatrix.from_dense(np.hstack([b.T, a.T]))
    logical_z, logical_x = find_logical_operators(h_x, h_z)
    x_schedule, z_schedule = _schedules(params)
    n = 2 * l * m
    code = StabilizerCode(
        name=name or f"[[{n},{len(logical_z)}{'' if d is None else f',{d}'}]]",
        family="bb",
        h_x=h_x,
        h_z=h_z,
        logical_z=logical_z,
        logical_x=logical_x,
        x_schedule=x_schedule,
        z_schedule=z_schedule,
        h_relabel=_relabel(params),
        d=d,
        idle_noise=True,
        spec=params.spec_string(),
    )
    code.validate()
    logger.info("built BB code %s (n=%d, k=%d)", code.name, code.n, code.k)
    return code


def check_weights(code: StabilizerCode) -> List[int]:
    return [len(code.h_x.row_support(r)) for r in range(code.h_x.rows)] + [
        len(code.h_z.row_support(r)) for r in range(code.h_z.rows)
    ]
