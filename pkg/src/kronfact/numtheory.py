"""Divisors, prime factorizations and the counting formulas built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError


@dataclass(frozen=True)
class PrimeFactorization:
    """``n = prod(p ** k for p, k in pairs)`` with strictly increasing primes."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.pairs)

    def value(self) -> int:
        return math.prod(p**k for p, k in self.pairs)

    def multiset(self) -> list[int]:
        """Primes repeated by multiplicity, ascending."""
        return [p for p, k in self.pairs for _ in range(k)]


def prime_factorization(n: int) -> PrimeFactorization:
    if n < 2:
        raise DomainError(f"prime factorization needs n >= 2, got {n}")
    pairs = []
    d = 2
    while d * d <= n:
        k = 0
        while n % d == 0:
            n //= d
            k += 1
        if k:
            pairs.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        pairs.append((n, 1))
    return PrimeFactorization(tuple(pairs))


def divisors(n: int) -> list[int]:
    if n < 1:
        raise DomainError(f"divisors needs n >= 1, got {n}")
    if n == 1:
        return [1]
    out = [1]
    for p, k in prime_factorization(n).pairs:
        out = [d * p**e for d in out for e in range(k + 1)]
    return sorted(out)


def compatible_pairs(n: int) -> list[tuple[int, int]]:
    """All ``(n1, n2)`` with ``n1, n2 > 1`` and ``n1 * n2 == n``, sorted by ``n1``."""
    if n < 2:
        raise DomainError(f"compatible pairs need n >= 2, got {n}")
    return [(d, n // d) for d in divisors(n)[1:-1]]


def reduce_multiples(values: Iterable[int]) -> list[int]:
    """Drop every element that is a proper multiple of another element."""
    xs = sorted(set(values))
    kept: list[int] = []
    for y in xs:
        # ascending order: any divisor of y from xs is already decided
        if not any(y % x == 0 for x in kept):
            kept.append(y)
    return kept


def max_factorization_length(n: int) -> int:
    return sum(prime_factorization(n).exponents)


def maximal_branch_count(n: int) -> int:
    """Multinomial ``l! / prod(k_j!)``: orderings of the prime multiset of ``n``."""
    ks = prime_factorization(n).exponents
    count = math.factorial(sum(ks))
    for k in ks:
        count //= math.factorial(k)
    return count


def factorizable_log2_bound(n: int) -> float:
    """log2 of the union bound on the chance a Be(1/2) pattern is factorizable.

    Returns ``-inf`` when ``n`` has no compatible pairs.
    """
    pairs = compatible_pairs(n)
    if not pairs:
        return -math.inf
    exps = [n1 * n1 + n2 * n2 - n * n for n1, n2 in pairs]
    top = max(exps)
    return top + math.log2(sum(2.0 ** (e - top) for e in exps))


def factorizable_probability_bound(n: int) -> float:
    log2 = factorizable_log2_bound(n)
    if log2 == -math.inf:
        return 0.0
    return 1.0 if log2 >= 0 else 2.0**log2
