from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from domain.linalg import BitMatrix, BitVector, in_row_space, rank

logger = logging.getLogger(__name__)

# One entry per CNOT tick: the data qubit visited by a check, or None when idle
Schedule = Tuple[Tuple[Optional[int], ...], ...]


class CodeConstructionError(ValueError):
    """Raised for invalid code parameters or a failed construction self-check."""


@dataclass(frozen=True)
class MonomialTerm:
    """Monomial x^x_exp * y^y_exp of the group algebra over Z_l x Z_m."""

    x_exp: int
    y_exp: int

    def reduced(self, l: int, m: int) -> "MonomialTerm":
        return MonomialTerm(self.x_exp % l, self.y_exp % m)

    def __str__(self) -> str:
        if self.x_exp == 0 and self.y_exp == 0:
            return "1"
        parts = []
        for name, exp in (("x", self.x_exp), ("y", self.y_exp)):
            if exp == 1:
                parts.append(name)
            elif exp > 1:
                parts.append(f"{name}{exp}")
        return "".join(parts)


@dataclass(frozen=True)
class BBParams:
    l: int
    m: int
    a_terms: Tuple[MonomialTerm, ...]
    b_terms: Tuple[MonomialTerm, ...]

    def validate(self) -> None:
        if self.l < 1 or self.m < 1:
            raise CodeConstructionError(
                f"l and m must be positive, got l={self.l} m={self.m}"
            )
        for label, terms in (("a", self.a_terms), ("b", self.b_terms)):
            reduced = {t.reduced(self.l, self.m) for t in terms}
            if len(terms) != 3 or len(reduced) != 3:
                raise CodeConstructionError(
                    f"polynomial {label} needs exactly 3 distinct terms, got "
                    f"{'+'.join(str(t) for t in terms) or 'none'}"
                )

    def spec_string(self) -> str:
        a = "+".join(str(t) for t in self.a_terms)
        b = "+".join(str(t) for t in self.b_terms)
        return f"bb l={self.l} m={self.m} a={a} b={b}"


@dataclass(frozen=True)
class CodeReport:
    n: int
    k: int
    d_claimed: Optional[int]
    encoding_rate: Fraction
    css_ok: bool

    def summary(self) -> str:
        d = "?" if self.d_claimed is None else str(self.d_claimed)
        verdict = "ok" if self.css_ok else "FAILED"
        return (
            f"n={self.n} k={self.k} d={d} rate={self.encoding_rate} css={verdict}"
        )


@dataclass
class StabilizerCode:
    """A CSS code with its syndrome-extraction schedule.

    ``x_schedule[i][t]`` is the data qubit X-check ``i`` couples to at CNOT
    tick ``t``; ``h_relabel`` maps each data qubit to its position after a
    transversal Hadamard so that Z checks land on X checks and vice versa.
    """

    name: str
    family: str
    h_x: BitMatrix
    h_z: BitMatrix
    logical_z: List[BitVector]
    logical_x: List[BitVector]
    x_schedule: Schedule
    z_schedule: Schedule
    h_relabel: Tuple[int, ...]
    d: Optional[int] = None
    idle_noise: bool = False
    spec: str = ""
    _k: int = field(default=-1, init=False, repr=False)

    @property
    def n(self) -> int:
        return self.h_x.cols

    @property
    def k(self) -> int:
        if self._k < 0:
            self._k = self.n - rank(self.h_x) - rank(self.h_z)
        return self._k

    @property
    def check_count(self) -> int:
        return self.h_x.rows + self.h_z.rows

    @property
    def tick_count(self) -> int:
        return len(self.x_schedule[0]) if self.x_schedule else 0

    def css_condition_holds(self) -> bool:
        return self.h_x.multiply(self.h_z.transpose()).is_zero()

    def report(self) -> CodeReport:
        return CodeReport(
            n=self.n,
            k=self.k,
            d_claimed=self.d,
            encoding_rate=Fraction(self.k, self.n + self.check_count),
            css_ok=self.css_condition_holds(),
        )

    def validate(self) -> None:
        """Check the CSS condition, logicals, schedule and relabeling."""
        if self.h_x.cols != self.h_z.cols:
            raise CodeConstructionError("H_X and H_Z have different widths")
        if not self.css_condition_holds():
            raise CodeConstructionError(
                f"{self.name}: CSS condition H_X H_Z^T = 0 fails"
            )
        self._validate_logicals()
        self._validate_schedule()
        self._validate_relabel()

    def _validate_logicals(self) -> None:
        k = self.k
        if len(self.logical_z) != k or len(self.logical_x) != k:
            raise CodeConstructionError(
                f"{self.name}: expected {k} logical pairs, got "
                f"{len(self.logical_z)}/{len(self.logical_x)}"
            )
        for i, lz in enumerate(self.logical_z):
            if not self.h_x.apply(lz).is_zero():
                raise CodeConstructionError(
                    f"logical Z{i} anticommutes with an X check"
                )
            if in_row_space(lz, self.h_z):
                raise CodeConstructionError(f"logical Z{i} is a stabilizer")
            for j, lx in enumerate(self.logical_x):
                if lz.dot(lx) != int(i == j):
                    raise CodeConstructionError(
                        f"logical Z{i} and X{j} have the wrong commutation"
                    )
        for i, lx in enumerate(self.logical_x):
            if not self.h_z.apply(lx).is_zero():
                raise CodeConstructionError(f"logical X{i} anticommutes with a Z check")
            if in_row_space(lx, self.h_x):
                raise CodeConstructionError(f"logical X{i} is a stabilizer")

    def _validate_schedule(self) -> None:
        ticks = self.tick_count
        for label, matrix, schedule in (
            ("X", self.h_x, self.x_schedule),
            ("Z", self.h_z, self.z_schedule),
        ):
            if len(schedule) != matrix.rows:
                raise CodeConstructionError(
                    f"{label} schedule covers {len(schedule)} checks"
                )
            for i, row in enumerate(schedule):
                if len(row) != ticks:
                    raise CodeConstructionError(
                        f"{label}{i} schedule has {len(row)} ticks"
                    )
                visited = [q for q in row if q is not None]
                if sorted(visited) != matrix.row_support(i):
                    raise CodeConstructionError(
                        f"{label}{i} schedule does not match its check support"
                    )
        for t in range(ticks):
            column = [row[t] for row in self.x_schedule + self.z_schedule]
            used = [q for q in column if q is not None]
            if len(used) != len(set(used)):
                raise CodeConstructionError(f"tick {t} touches a data qubit twice")

    def _validate_relabel(self) -> None:
        if sorted(self.h_relabel) != list(range(self.n)):
            raise CodeConstructionError("h_relabel is not a permutation")
        relabeled_z = _relabel_rows(self.h_z, self.h_relabel)
        relabeled_x = _relabel_rows(self.h_x, self.h_relabel)
        if relabeled_z != _row_set(self.h_x) or relabeled_x != _row_set(self.h_z):
            raise CodeConstructionError(
                "h_relabel does not exchange the X and Z check sets"
            )
        logger.debug("%s: schedule and relabeling verified", self.name)

    def inverse_relabel(self) -> Tuple[int, ...]:
        inverse = [0] * self.n
        for q, image in enumerate(self.h_relabel):
            inverse[image] = q
        return tuple(inverse)


def _row_set(matrix: BitMatrix) -> set:
    return {tuple(matrix.row_support(r)) for r in range(matrix.rows)}


def _relabel_rows(matrix: BitMatrix, perm: Tuple[int, ...]) -> set:
    dense = matrix.to_dense()
    rows = set()
    for r in range(dense.shape[0]):
        rows.add(tuple(sorted(perm[int(q)] for q in np.flatnonzero(dense[r]))))
    return rows
