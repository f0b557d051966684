"""Seeded pattern and matrix fixtures, including the worked examples."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .engine import is_prime
from .errors import DomainError
from .pattern import BinaryPattern, kron_all

DEFAULT_SEED = 7


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_pattern(n: int, density: float = 0.5, seed=DEFAULT_SEED, nonempty: bool = True) -> BinaryPattern:
    """I.i.d. Bernoulli(density) entries."""
    if not 0.0 <= density <= 1.0:
        raise DomainError(f"density must lie in [0, 1], got {density}")
    if nonempty and density == 0.0:
        raise DomainError("cannot draw a nonempty pattern with density 0")
    rng = _rng(seed)
    while True:
        p = BinaryPattern.from_dense(rng.random((n, n)) < density)
        if p.nnz or not nonempty:
            return p


def random_prime_pattern(n: int, density: float = 0.5, seed=DEFAULT_SEED, max_tries: int = 10_000) -> BinaryPattern:
    rng = _rng(seed)
    for _ in range(max_tries):
        p = random_pattern(n, density, rng)
        if is_prime(p):
            return p
    raise DomainError(f"no prime pattern of size {n} found in {max_tries} draws")


def random_kron(sizes: Sequence[int], density: float = 0.5, seed=DEFAULT_SEED) -> tuple[BinaryPattern, list[BinaryPattern]]:
    """Product of random prime factors with the given sizes, and the factors."""
    rng = _rng(seed)
    factors = [random_prime_pattern(s, density, rng) for s in sizes]
    return kron_all(factors), factors


def banded(n: int, lower: int = 1, upper: int = 1) -> BinaryPattern:
    i, j = np.indices((n, n))
    return BinaryPattern.from_dense((j - i <= upper) & (i - j <= lower))


def hierarchical_banded(sizes: Sequence[int] = (31, 12, 12, 12)) -> BinaryPattern:
    """Tridiagonal outer factor times lower-bidiagonal inner factors.

    With the default sizes, n = 53568 and nnz = 1 107 197.
    """
    factors = [banded(sizes[0], 1, 1)] + [banded(s, 1, 0) for s in sizes[1:]]
    return kron_all(factors)


# worked examples

def _d(rows) -> BinaryPattern:
    return BinaryPattern.from_dense(np.array(rows))


def example1() -> BinaryPattern:
    """12 x 12 maximal pattern with decompositions (2,2,3), (2,3,2), (3,2,2)."""
    return kron_all([_d([[1, 1], [0, 0]]), _d([[1, 1], [0, 0]]), _d([[1, 1, 1], [0, 0, 0], [1, 1, 1]])])


def example2() -> BinaryPattern:
    """12 x 12 pattern with prime decompositions (3,4) and (2,2,3)."""
    return kron_all(
        [_d([[1, 0, 0], [0, 0, 0], [0, 0, 0]]), _d([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]])]
    )


def maximal6() -> BinaryPattern:
    return kron_all([_d([[1, 0], [1, 0]]), _d([[1, 0, 1], [1, 0, 1], [1, 0, 1]])])


def example5() -> BinaryPattern:
    """The 6 x 6 maximal pattern times itself: five prime decompositions of size 36."""
    m = maximal6()
    return kron_all([m, m])


def diag3_of_4() -> BinaryPattern:
    return BinaryPattern.from_coordinates(4, [(1, 1), (2, 2), (3, 3)])


def lower3_of_4() -> BinaryPattern:
    return BinaryPattern.from_coordinates(4, [(1, 1), (2, 1), (2, 2)])


def graph_factors() -> list[BinaryPattern]:
    """Adjacency factors of the (4, 3, 2) Kronecker graph."""
    return [
        _d([[1, 0, 0, 0], [1, 1, 0, 0], [1, 1, 1, 0], [0, 0, 0, 1]]),
        _d([[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
        _d([[0, 1], [1, 0]]),
    ]


def graph_adjacency() -> BinaryPattern:
    return kron_all(graph_factors())


def arrowhead(k: int = 3) -> BinaryPattern:
    a = _d([[1, 1, 1, 1], [1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1]])
    return kron_all([a] * k)


def gate_pattern() -> BinaryPattern:
    """Sparsity of CNOT ⊗ Toffoli ⊗ H: a separable 64 x 64 gate of sizes (4, 8, 2)."""
    cnot = _d([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    toffoli = np.eye(8, dtype=int)
    toffoli[6:, 6:] = [[0, 1], [1, 0]]
    hadamard = _d([[1, 1], [1, 1]])
    return kron_all([cnot, BinaryPattern.from_dense(toffoli), hadamard])


# real matrices

def banded_values(n: int, lower: int, upper: int, seed=DEFAULT_SEED, low: float = 0.5, high: float = 1.5) -> np.ndarray:
    """Banded matrix with entries drawn uniformly from ``[low, high]`` (no cancellation)."""
    rng = _rng(seed)
    i, j = np.indices((n, n))
    mask = (j - i <= upper) & (i - j <= lower)
    return np.where(mask, rng.uniform(low, high, (n, n)), 0.0)


def two_term_matrix(sizes: Sequence[int] = (5, 4, 6), seed=DEFAULT_SEED) -> np.ndarray:
    """``W ⊗ M + M' ⊗ K`` with banded seeded factors.

    Every factor is tridiagonal with positive entries.  Each spatial matrix
    is itself a sum of two Kronecker terms over ``sizes[1:]``, so ``B`` is
    far from an exact Kronecker product while its sparsity is one.
    """
    rng = _rng(seed)
    nt, inner = sizes[0], sizes[1:]

    def spatial():
        terms = [[banded_values(s, 1, 1, rng) for s in inner] for _ in range(2)]
        out = 0
        for t in terms:
            prod = t[0]
            for f in t[1:]:
                prod = np.kron(prod, f)
            out = out + prod
        return out

    w = banded_values(nt, 1, 1, rng)
    m_t = banded_values(nt, 1, 1, rng)
    return np.kron(w, spatial()) + np.kron(m_t, spatial())
