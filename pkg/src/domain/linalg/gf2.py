"""Dense linear algebra over GF(2).

Rows are stored packed eight bits per byte (``numpy.packbits`` little bit
order), so a row XOR touches ``ceil(cols / 8)`` bytes.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np


def _pack(dense: np.ndarray) -> np.ndarray:
    bits = np.asarray(dense, dtype=np.uint8) & 1
    return np.packbits(bits, axis=-1, bitorder="little")


def _unpack(packed: np.ndarray, width: int) -> np.ndarray:
    if width == 0:
        return np.zeros(packed.shape[:-1] + (0,), dtype=np.uint8)
    return np.unpackbits(packed, axis=-1, count=width, bitorder="little")


def _words(cols: int) -> int:
    return (cols + 7) // 8


class BitVector:
    """Fixed-length bit vector."""

    __slots__ = ("_length", "_data")

    def __init__(self, length: int, data: Optional[np.ndarray] = None) -> None:
        if length < 0:
            raise ValueError(f"Invalid vector length: {length}")
        self._length = length
        if data is None:
            data = np.zeros(_words(length), dtype=np.uint8)
        self._data = data

    @classmethod
    def from_dense(cls, bits: Sequence[int] | np.ndarray) -> "BitVector":
        arr = np.asarray(bits, dtype=np.uint8).reshape(-1)
        return cls(arr.size, _pack(arr))

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        dense = np.zeros(length, dtype=np.uint8)
        for i in indices:
            if not 0 <= i < length:
                raise IndexError(f"bit {i} out of range for length {length}")
            dense[i] ^= 1
        return cls.from_dense(dense)

    def __len__(self) -> int:
        return self._length

    def _check(self, i: int) -> None:
        if not 0 <= i < self._length:
            raise IndexError(f"bit {i} out of range for length {self._length}")

    def get(self, i: int) -> int:
        self._check(i)
        return int((self._data[i >> 3] >> (i & 7)) & 1)

    def set(self, i: int, value: int) -> None:
        self._check(i)
        mask = np.uint8(1 << (i & 7))
        if value & 1:
            self._data[i >> 3] |= mask
        else:
            self._data[i >> 3] &= ~mask

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self._length != other._length:
            raise ValueError(
                f"length mismatch: {self._length} vs {other._length}"
            )
        return BitVector(self._length, self._data ^ other._data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._length == other._length and bool(
            np.array_equal(self._data, other._data)
        )

    def __hash__(self) -> int:
        return hash((self._length, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector({self._length}, support={self.support()})"

    def weight(self) -> int:
        return int(np.unpackbits(self._data).sum())

    def support(self) -> List[int]:
        return [int(i) for i in np.flatnonzero(self.to_dense())]

    def dot(self, other: "BitVector") -> int:
        if self._length != other._length:
            raise ValueError(
                f"length mismatch: {self._length} vs {other._length}"
            )
        return int(np.unpackbits(self._data & other._data).sum() & 1)

    def is_zero(self) -> bool:
        return not self._data.any()

    def to_dense(self) -> np.ndarray:
        return _unpack(self._data, self._length)

    def copy(self) -> "BitVector":
        return BitVector(self._length, self._data.copy())


class BitMatrix:
    """Row-major GF(2) matrix with packed rows."""

    __slots__ = ("_rows", "_cols", "_data")

    def __init__(self, rows: int, cols: int, data: Optional[np.ndarray] = None) -> None:
        if rows < 0 or cols < 0:
            raise ValueError(f"Invalid matrix shape: {rows}x{cols}")
        self._rows = rows
        self._cols = cols
        if data is None:
            data = np.zeros((rows, _words(cols)), dtype=np.uint8)
        self._data = data

    @classmethod
    def from_dense(cls, array: Sequence[Sequence[int]] | np.ndarray) -> "BitMatrix":
        arr = np.asarray(array, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {arr.shape}")
        return cls(arr.shape[0], arr.shape[1], _pack(arr))

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], cols: int) -> "BitMatrix":
        data = np.zeros((len(rows), _words(cols)), dtype=np.uint8)
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"row {i} has length {len(row)}, expected {cols}")
            data[i] = row._data
        return cls(len(rows), cols, data)

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":
        return cls.from_dense(np.eye(size, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self._rows, self._cols

    def _check(self, r: int, c: int) -> None:
        if not (0 <= r < self._rows and 0 <= c < self._cols):
            raise IndexError(f"({r}, {c}) out of range for {self._rows}x{self._cols}")

    def get(self, r: int, c: int) -> int:
        self._check(r, c)
        return int((self._data[r, c >> 3] >> (c & 7)) & 1)

    def set(self, r: int, c: int, value: int) -> None:
        self._check(r, c)
        mask = np.uint8(1 << (c & 7))
        if value & 1:
            self._data[r, c >> 3] |= mask
        else:
            self._data[r, c >> 3] &= ~mask

    def row(self, r: int) -> BitVector:
        if not 0 <= r < self._rows:
            raise IndexError(f"row {r} out of range for {self._rows} rows")
        return BitVector(self._cols, self._data[r].copy())

    def row_support(self, r: int) -> List[int]:
        return self.row(r).support()

    def column(self, c: int) -> np.ndarray:
        if not 0 <= c < self._cols:
            raise IndexError(f"column {c} out of range for {self._cols} columns")
        return ((self._data[:, c >> 3] >> (c & 7)) & 1).astype(np.uint8)

    def to_dense(self) -> np.ndarray:
        return _unpack(self._data, self._cols)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self._rows, self._cols, self._data.copy())

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self._rows != other._rows:
            raise ValueError(f"row mismatch: {self._rows} vs {other._rows}")
        return BitMatrix.from_dense(np.hstack([self.to_dense(), other.to_dense()]))

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self._cols != other._cols:
            raise ValueError(f"column mismatch: {self._cols} vs {other._cols}")
        return BitMatrix(
            self._rows + other._rows,
            self._cols,
            np.vstack([self._data, other._data]),
        )

    def multiply(self, other: "BitMatrix") -> "BitMatrix":
        if self._cols != other._rows:
            raise ValueError(
                f"cannot multiply {self._rows}x{self._cols} "
                f"by {other._rows}x{other._cols}"
            )
        left = self.to_dense().astype(np.int64)
        right = other.to_dense().astype(np.int64)
        return BitMatrix.from_dense((left @ right) & 1)

    def apply(self, vector: BitVector) -> BitVector:
        """Return ``self @ vector`` over GF(2)."""
        if len(vector) != self._cols:
            raise ValueError(
                f"vector length {len(vector)} does not match {self._cols} columns"
            )
        hits = np.unpackbits(self._data & vector._data[None, :], axis=1).sum(axis=1)
        return BitVector.from_dense(hits & 1)

    def is_zero(self) -> bool:
        return not self._data.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return bool(np.array_equal(self._data, other._data))

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self._rows}x{self._cols})"


def _eliminate(data: np.ndarray, order: Iterable[int]) -> List[int]:
    """Full Gauss-Jordan elimination in place; returns pivot columns in order."""
    rows = data.shape[0]
    pivots: List[int] = []
    r = 0
    for c in order:
        if r >= rows:
            break
        word, shift = c >> 3, c & 7
        col = (data[:, word] >> shift) & 1
        below = np.flatnonzero(col[r:])
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            data[[r, p]] = data[[p, r]]
            col[[r, p]] = col[[p, r]]
        hits = np.flatnonzero(col)
        hits = hits[hits != r]
        if hits.size:
            data[hits] ^= data[r]
        pivots.append(int(c))
        r += 1
    return pivots


def row_reduce(
    matrix: BitMatrix, pivot_order: Optional[Sequence[int]] = None
) -> Tuple[BitMatrix, List[int]]:
    """Reduced row echelon form, choosing pivots in ``pivot_order``.

    Returns the reduced matrix (pivot rows first, row ``i`` owning
    ``pivots[i]``) and the pivot columns as original column indices.
    """
    if pivot_order is None:
        pivot_order = range(matrix.cols)
    else:
        seen = set()
        for c in pivot_order:
            if not 0 <= c < matrix.cols or c in seen:
                raise ValueError(f"invalid pivot order entry: {c}")
            seen.add(c)
    reduced = matrix.copy()
    pivots = _eliminate(reduced._data, pivot_order)
    return reduced, pivots


def rank(matrix: BitMatrix) -> int:
    return len(row_reduce(matrix)[1])


def solve(matrix: BitMatrix, rhs: BitVector) -> Optional[BitVector]:
    """Return one ``x`` with ``matrix @ x == rhs``, or None if inconsistent."""
    if len(rhs) != matrix.rows:
        raise ValueError(
            f"right-hand side length {len(rhs)} does not match {matrix.rows} rows"
        )
    dense = np.hstack([matrix.to_dense(), rhs.to_dense()[:, None]])
    augmented = BitMatrix.from_dense(dense)
    pivots = _eliminate(augmented._data, range(matrix.cols))
    last = augmented.column(matrix.cols)
    if last[len(pivots):].any():
        return None
    x = np.zeros(matrix.cols, dtype=np.uint8)
    for i, c in enumerate(pivots):
        x[c] = last[i]
    return BitVector.from_dense(x)


def kernel_basis(matrix: BitMatrix) -> List[BitVector]:
    """Basis of the right null space, one vector per free column."""
    reduced, pivots = row_reduce(matrix)
    dense = reduced.to_dense()
    pivot_set = set(pivots)
    basis: List[BitVector] = []
    for f in range(matrix.cols):
        if f in pivot_set:
            continue
        v = np.zeros(matrix.cols, dtype=np.uint8)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = dense[i, f]
        basis.append(BitVector.from_dense(v))
    return basis


def inverse(matrix: BitMatrix) -> BitMatrix:
    """Inverse of a square invertible matrix; ValueError if singular."""
    if matrix.rows != matrix.cols:
        raise ValueError(f"matrix is not square: {matrix.rows}x{matrix.cols}")
    size = matrix.rows
    augmented = matrix.hstack(BitMatrix.identity(size))
    pivots = _eliminate(augmented._data, range(size))
    if len(pivots) != size:
        raise ValueError("matrix is singular over GF(2)")
    return BitMatrix.from_dense(augmented.to_dense()[:, size:])


def in_row_space(vector: BitVector, matrix: BitMatrix) -> bool:
    return solve(matrix.transpose(), vector) is not None
