"""GF(2) linear algebra used by codes, detector placement and OSD."""

from .gf2 import (
    BitMatrix,
    BitVector,
    in_row_space,
    inverse,
    kernel_basis,
    rank,
    row_reduce,
    solve,
)

__all__ = [
    "BitMatrix",
    "BitVector",
    "in_row_space",
    "inverse",
    "kernel_basis",
    "rank",
    "row_reduce",
    "solve",
]
