"""Length-2 Kronecker factorization of binary patterns.

For a compatible pair ``(n1, n2)`` every nonzero ``(i, j)`` of ``A`` splits
into a left basis index ``l1`` (position of its ``n2``-block) and a right
basis index ``l2`` (position inside the block).  ``A = A1 ⊗ A2`` holds
exactly when the set of pairs ``(l1, l2)`` is a Cartesian product, and the
two projections are then the supports of ``A1`` and ``A2``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import ConsistencyError, DomainError, EmptyPatternError
from .numtheory import compatible_pairs
from .pattern import BinaryPattern, kron_pattern

# above this many slots a boolean presence mask costs more than np.unique
_MASK_LIMIT = 1 << 24


@dataclass(frozen=True)
class RearrangedSupport:
    """Nonzero positions of the rearranged matrix, as 1-based linear index pairs."""

    n1: int
    n2: int
    l1: np.ndarray
    l2: np.ndarray

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.l1.tolist(), self.l2.tolist()))

    def __len__(self):
        return int(self.l1.size)

    def cartesian_split(self) -> Optional[tuple[list[int], list[int]]]:
        """Group by ``l1`` and compare each group's ``l2`` set with the first one.

        Returns ``(S1, S2)`` when the support is ``S1 x S2``, else None.
        """
        if not len(self):
            return None
        starts = np.flatnonzero(np.r_[True, self.l1[1:] != self.l1[:-1]])
        bounds = np.r_[starts, self.l1.size]
        first = self.l2[bounds[0] : bounds[1]]
        if self.l1.size != starts.size * first.size:
            return None
        for a, b in zip(bounds[1:-1], bounds[2:]):
            if not np.array_equal(self.l2[a:b], first):
                return None
        return self.l1[starts].tolist(), first.tolist()


@dataclass(frozen=True)
class Length2Factorization:
    left: BinaryPattern
    right: BinaryPattern

    @property
    def pair(self) -> tuple[int, int]:
        return self.left.size, self.right.size

    @property
    def n1(self) -> int:
        return self.left.size

    @property
    def n2(self) -> int:
        return self.right.size


def _check_pair(a: BinaryPattern, n1: int, n2: int):
    if a.is_empty():
        raise EmptyPatternError("the zero pattern has no well-defined factorization")
    if n1 < 1 or n2 < 1 or n1 * n2 != a.size:
        raise DomainError(f"sizes ({n1}, {n2}) are incompatible with n = {a.size}")


def _split_indices(r0, c0, n1, n2):
    """0-based left and right linear indices from 0-based rows/cols."""
    i1, i2 = np.divmod(r0, n2)
    j1, j2 = np.divmod(c0, n2)
    return j1 * n1 + i1, j2 * n2 + i2


def _distinct(values: np.ndarray, bound: int) -> np.ndarray:
    """Sorted distinct values of ``values``, all known to lie in ``[0, bound)``."""
    if bound <= _MASK_LIMIT:
        mask = np.zeros(bound, dtype=bool)
        mask[values] = True
        return np.flatnonzero(mask)
    return np.unique(values)


def rearranged_support(a: BinaryPattern, n1: int, n2: int) -> RearrangedSupport:
    _check_pair(a, n1, n2)
    r0 = a.rows - 1
    c0 = a.cols - 1
    l1, l2 = _split_indices(r0, c0, n1, n2)
    order = np.lexsort((l2, l1))
    return RearrangedSupport(n1, n2, l1[order] + 1, l2[order] + 1)


def _try_split(r0, c0, count, n1, n2) -> Optional[tuple[np.ndarray, np.ndarray]]:
    # S is always a subset of proj1(S) x proj2(S); equality is a cardinality check
    l1, l2 = _split_indices(r0, c0, n1, n2)
    small, big = ((l1, n1 * n1), (l2, n2 * n2))
    swap = small[1] > big[1]
    if swap:
        small, big = big, small
    s_small = _distinct(*small)
    if count % s_small.size:
        return None
    s_big = _distinct(*big)
    if s_small.size * s_big.size != count:
        return None
    return (s_big, s_small) if swap else (s_small, s_big)


def _factorization(n1, n2, split) -> Length2Factorization:
    s1, s2 = split
    return Length2Factorization(
        BinaryPattern(n1, s1 + 1, _canonical=True),
        BinaryPattern(n2, s2 + 1, _canonical=True),
    )


def try_factorize(a: BinaryPattern, n1: int, n2: int) -> Optional[Length2Factorization]:
    """The unique ``(n1, n2)`` factorization of ``a``, or None if there is none."""
    _check_pair(a, n1, n2)
    split = _try_split(a.rows - 1, a.cols - 1, a.nnz, n1, n2)
    return None if split is None else _factorization(n1, n2, split)


def _worker_count(workers):
    if workers is not None:
        return max(1, int(workers))
    try:
        return max(1, int(os.environ.get("KRONFACT_THREADS", "1")))
    except ValueError:
        return 1


def all_length2(
    a: BinaryPattern,
    pairs: Optional[Iterable[tuple[int, int]]] = None,
    workers: Optional[int] = None,
) -> list[Length2Factorization]:
    """Every length-2 factorization of ``a``, ordered by left size.

    ``pairs`` restricts the sweep to a subset of the compatible pairs.
    ``workers`` (default: ``$KRONFACT_THREADS`` or 1) evaluates pairs on a
    thread pool; the result order does not depend on it.
    """
    if a.is_empty():
        raise EmptyPatternError("the zero pattern has no well-defined factorization")
    n = a.size
    if pairs is None:
        todo = compatible_pairs(n) if n >= 2 else []
    else:
        todo = sorted(set((int(p), int(q)) for p, q in pairs))
        for p, q in todo:
            _check_pair(a, p, q)
    r0 = a.rows - 1
    c0 = a.cols - 1
    count = a.nnz

    def attempt(pair):
        split = _try_split(r0, c0, count, *pair)
        return None if split is None else _factorization(*pair, split)

    nworkers = min(_worker_count(workers), max(1, len(todo)))
    if nworkers > 1:
        with ThreadPoolExecutor(nworkers) as pool:
            found = list(pool.map(attempt, todo))
    else:
        found = [attempt(p) for p in todo]
    return [f for f in found if f is not None]


def is_prime(a: BinaryPattern) -> bool:
    return not all_length2(a)


def is_maximal(a: BinaryPattern) -> bool:
    n_pairs = len(compatible_pairs(a.size)) if a.size >= 2 else 0
    return n_pairs > 0 and len(all_length2(a)) == n_pairs


def extract_right_factor(p: BinaryPattern, k: BinaryPattern, r: int) -> BinaryPattern:
    """Recover ``R`` from ``P = K ⊗ R`` by reading the block of the first nonzero of ``K``."""
    if k.is_empty():
        raise EmptyPatternError("left factor is empty")
    if p.size != k.size * r:
        raise DomainError(f"size {p.size} is not {k.size} * {r}")
    a, b = int(k.rows[0]), int(k.cols[0])
    rows, cols = p.rows, p.cols
    lo_r, lo_c = (a - 1) * r, (b - 1) * r
    inside = (rows > lo_r) & (rows <= lo_r + r) & (cols > lo_c) & (cols <= lo_c + r)
    right = BinaryPattern.from_arrays(r, rows[inside] - lo_r, cols[inside] - lo_c)
    if right.is_empty() or kron_pattern(k, right) != p:
        raise ConsistencyError(f"pattern of size {p.size} is not K ⊗ R for the given K")
    return right
