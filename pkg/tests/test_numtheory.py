import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kronfact.errors import DomainError
from kronfact.numtheory import (
    compatible_pairs,
    divisors,
    factorizable_log2_bound,
    factorizable_probability_bound,
    max_factorization_length,
    maximal_branch_count,
    prime_factorization,
    reduce_multiples,
)

from oracles import prime_multiset_orderings


def _naive_divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def test_divisors_examples():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(13) == [1, 13]
    assert divisors(24) == [1, 2, 3, 4, 6, 8, 12, 24]
    assert divisors(1) == [1]


def test_divisors_against_naive():
    for n in range(1, 2000):
        assert divisors(n) == _naive_divisors(n)


def test_prime_factorization_examples():
    assert prime_factorization(24).pairs == ((2, 3), (3, 1))
    assert prime_factorization(36).pairs == ((2, 2), (3, 2))
    assert prime_factorization(7).pairs == ((7, 1),)
    with pytest.raises(DomainError):
        prime_factorization(1)


@given(st.integers(2, 10**6))
def test_prime_factorization_reconstructs(n):
    f = prime_factorization(n)
    assert f.value() == n
    assert list(f.primes) == sorted(set(f.primes))
    assert all(len(_naive_divisors(p)) == 2 for p in f.primes if p < 10**4)


def test_compatible_pairs_examples():
    assert compatible_pairs(12) == [(2, 6), (3, 4), (4, 3), (6, 2)]
    assert compatible_pairs(4) == [(2, 2)]
    assert compatible_pairs(7) == []


def test_compatible_pairs_cardinality_exhaustive():
    for n in range(2, 10_001):
        expected = math.prod(k + 1 for k in prime_factorization(n).exponents) - 2
        pairs = compatible_pairs(n)
        assert len(pairs) == expected
        assert len(set(pairs)) == len(pairs)
        assert pairs == sorted(pairs)
        assert all(a > 1 and b > 1 and a * b == n for a, b in pairs)


def test_reduce_multiples_examples():
    assert reduce_multiples({2, 3, 4, 6}) == [2, 3]
    assert reduce_multiples({5}) == [5]
    assert reduce_multiples({2, 3, 4, 6, 8, 12}) == [2, 3]


@given(st.sets(st.integers(2, 500), max_size=30))
def test_reduce_multiples_antichain_and_idempotent(xs):
    r = reduce_multiples(xs)
    assert reduce_multiples(r) == r
    for a in r:
        for b in r:
            assert a == b or b % a
    # every dropped element is a multiple of a kept one
    for x in xs:
        assert any(x % a == 0 for a in r)


def test_length_and_branch_count_examples():
    assert max_factorization_length(24) == 4
    assert max_factorization_length(12) == 3
    assert max_factorization_length(13) == 1
    assert maximal_branch_count(24) == 4
    assert maximal_branch_count(12) == 3
    assert maximal_branch_count(36) == 6


def test_branch_count_matches_enumeration():
    for n in range(2, 361):
        orderings = prime_multiset_orderings(n)
        assert maximal_branch_count(n) == len(orderings)
        assert max_factorization_length(n) == len(next(iter(orderings)))


def _exact_bound(n):
    total = sum(Fraction(2 ** (a * a + b * b), 2 ** (n * n)) for a, b in compatible_pairs(n))
    return min(total, Fraction(1))


def test_probability_bound_examples():
    assert factorizable_probability_bound(4) == 2.0**-8
    assert factorizable_probability_bound(7) == 0.0
    assert factorizable_probability_bound(6) == 2.0**-22
    assert factorizable_log2_bound(4) == pytest.approx(-8)


@pytest.mark.parametrize("n", [4, 6, 8, 9, 10, 12, 15, 16])
def test_probability_bound_against_exact(n):
    assert factorizable_probability_bound(n) == pytest.approx(float(_exact_bound(n)), rel=1e-12)


def test_probability_bound_no_underflow_for_large_n():
    # the probability itself underflows but the log2 value stays finite
    assert factorizable_probability_bound(1024) == 0.0
    assert math.isfinite(factorizable_log2_bound(1024))
    assert factorizable_log2_bound(1024) < -500_000
