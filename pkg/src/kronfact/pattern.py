"""Binary sparsity patterns and the 1-based, column-major index arithmetic.

A pattern of size ``n`` is stored as the sorted array of linear indices
``l = (col - 1) * n + row`` of its nonzero entries.  Every public function
speaks 1-based ``(row, col)`` pairs; conversion happens at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DomainError

MAX_SIZE = 2**31 - 1


@dataclass(frozen=True, order=True)
class Coordinate:
    row: int
    col: int

    def __post_init__(self):
        if self.row < 1 or self.col < 1:
            raise DomainError(f"coordinates are 1-based, got ({self.row}, {self.col})")

    def __iter__(self):
        yield self.row
        yield self.col


def _check_size(n) -> int:
    n = int(n)
    if not 1 <= n <= MAX_SIZE:
        raise DomainError(f"size must lie in [1, {MAX_SIZE}], got {n}")
    return n


def linear_index(i: int, j: int, n: int) -> int:
    """Column-major linear index ``(j - 1) * n + i`` of the 1-based pair ``(i, j)``."""
    n = _check_size(n)
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"index ({i}, {j}) out of range for size {n}")
    return (j - 1) * n + i


def inverse_linear_index(l: int, n: int) -> Coordinate:
    n = _check_size(n)
    if not 1 <= l <= n * n:
        raise DomainError(f"linear index {l} out of range for size {n}")
    col, row = divmod(l - 1, n)
    return Coordinate(row + 1, col + 1)


def split_coordinate(i: int, n2: int) -> tuple[int, int]:
    """Split a 1-based index into (outer block, inner offset) for blocks of size ``n2``.

    Satisfies ``i == (i1 - 1) * n2 + i2`` with ``1 <= i2 <= n2``.
    """
    if i < 1 or n2 < 1:
        raise DomainError(f"split_coordinate needs i >= 1 and n2 >= 1, got ({i}, {n2})")
    q, r = divmod(i - 1, n2)
    return q + 1, r + 1


class BinaryPattern:
    """Immutable sparsity pattern of an ``n x n`` binary matrix.

    Iterating yields ``(row, col)`` tuples in increasing column-major order.
    """

    __slots__ = ("_n", "_index")

    def __init__(self, n: int, index=(), *, _canonical: bool = False):
        n = _check_size(n)
        idx = np.asarray(index, dtype=np.int64).ravel()
        if not _canonical:
            idx = np.unique(idx)
            if idx.size and (idx[0] < 1 or idx[-1] > n * n):
                raise DomainError(f"linear index out of range for size {n}")
        idx.setflags(write=False)
        self._n = n
        self._index = idx

    # constructors

    @classmethod
    def from_coordinates(cls, n: int, coords: Iterable[Sequence[int]]) -> "BinaryPattern":
        coords = [tuple(c) for c in coords]
        if not coords:
            return cls(n)
        arr = np.asarray(coords, dtype=np.int64)
        return cls.from_arrays(n, arr[:, 0], arr[:, 1])

    @classmethod
    def from_arrays(cls, n: int, rows, cols) -> "BinaryPattern":
        n = _check_size(n)
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        if rows.shape != cols.shape:
            raise DomainError("row and column arrays differ in length")
        if rows.size:
            bad = (rows < 1) | (rows > n) | (cols < 1) | (cols > n)
            if bad.any():
                k = int(np.argmax(bad))
                raise DomainError(
                    f"coordinate ({rows[k]}, {cols[k]}) out of range for size {n}"
                )
        return cls(n, (cols - 1) * n + rows)

    @classmethod
    def from_dense(cls, matrix) -> "BinaryPattern":
        m = np.asarray(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError(f"expected a square matrix, got shape {m.shape}")
        n = m.shape[0]
        # flatnonzero on the transpose walks column-major
        lin = np.flatnonzero(m.T != 0) + 1
        return cls(n, lin, _canonical=True)

    @classmethod
    def identity(cls, n: int) -> "BinaryPattern":
        k = np.arange(1, n + 1, dtype=np.int64)
        return cls(n, (k - 1) * n + k, _canonical=True)

    @classmethod
    def ones(cls, n: int) -> "BinaryPattern":
        return cls(n, np.arange(1, n * n + 1, dtype=np.int64), _canonical=True)

    @classmethod
    def basis(cls, n: int, i: int, j: int) -> "BinaryPattern":
        return cls(n, [linear_index(i, j, n)], _canonical=True)

    # accessors

    @property
    def size(self) -> int:
        return self._n

    @property
    def nnz(self) -> int:
        return int(self._index.size)

    @property
    def linear(self) -> np.ndarray:
        """Sorted 1-based column-major linear indices (read-only view)."""
        return self._index

    @property
    def rows(self) -> np.ndarray:
        return (self._index - 1) % self._n + 1

    @property
    def cols(self) -> np.ndarray:
        return (self._index - 1) // self._n + 1

    def is_empty(self) -> bool:
        return self._index.size == 0

    def coordinates(self) -> list[tuple[int, int]]:
        return list(zip(self.rows.tolist(), self.cols.tolist()))

    def to_dense(self, dtype=np.int8) -> np.ndarray:
        out = np.zeros((self._n, self._n), dtype=dtype)
        out[self.rows - 1, self.cols - 1] = 1
        return out

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.coordinates())

    def __len__(self) -> int:
        return self.nnz

    def __contains__(self, item) -> bool:
        i, j = item
        if not (1 <= i <= self._n and 1 <= j <= self._n):
            return False
        l = (j - 1) * self._n + i
        k = np.searchsorted(self._index, l)
        return bool(k < self._index.size and self._index[k] == l)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryPattern):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._index, other._index)

    def __hash__(self) -> int:
        return hash((self._n, self._index.tobytes()))

    def __repr__(self) -> str:
        if self.nnz <= 8:
            return f"BinaryPattern(n={self._n}, {self.coordinates()})"
        return f"BinaryPattern(n={self._n}, nnz={self.nnz})"


def pattern_equals(a: BinaryPattern, b: BinaryPattern) -> bool:
    return a == b


def nnz(a: BinaryPattern) -> int:
    return a.nnz


def kron_pattern(a: BinaryPattern, b: BinaryPattern) -> BinaryPattern:
    """Sparsity pattern of ``A ⊗ B``; nnz of the result is ``nnz(A) * nnz(B)``."""
    na, nb = a.size, b.size
    n = _check_size(na * nb)
    rows = ((a.rows[:, None] - 1) * nb + b.rows[None, :]).ravel()
    cols = ((a.cols[:, None] - 1) * nb + b.cols[None, :]).ravel()
    lin = np.sort((cols - 1) * n + rows)
    return BinaryPattern(n, lin, _canonical=True)


def kron_all(patterns: Sequence[BinaryPattern]) -> BinaryPattern:
    if not patterns:
        raise DomainError("kron_all needs at least one pattern")
    return reduce(kron_pattern, patterns)
