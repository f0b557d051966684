"""Acceptance criteria, one test per criterion.

The session summary prints one ``PASS``/``FAIL`` line per criterion.
Timings are medians over several warm runs.
"""

import math
import time
from collections import Counter

import numpy as np
import pytest

from kronfact import generators as gen
from kronfact.branches import all_prime_decompositions, decompose
from kronfact.engine import rearranged_support, try_factorize
from kronfact.formats import SvgStyle, write_svg
from kronfact.layout import LayoutConfig, edge_segments, layout_positions
from kronfact.nkp import nkp2, nkp_multi
from kronfact.numtheory import factorizable_probability_bound, prime_factorization
from kronfact.pattern import BinaryPattern, kron_all

from oracles import (
    dense,
    dense_kron,
    jacobi_singular_values,
    naive_rearrange,
    prime_multiset_orderings,
)


def _median_seconds(fn, reps=7):
    fn()
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return sorted(times)[reps // 2]


def _kron_oracle_ok(a, factors):
    return np.array_equal(dense(a), dense_kron(*[dense(f) for f in factors]))


def test_c01_worked_length2_examples():
    """Diag pattern not (2,2)-factorizable; modified pattern factorizes; < 1 ms."""
    diag, modified = gen.diag3_of_4(), gen.lower3_of_4()

    def run():
        return (
            rearranged_support(diag, 2, 2).pairs(),
            try_factorize(diag, 2, 2),
            rearranged_support(modified, 2, 2).cartesian_split(),
            try_factorize(modified, 2, 2),
        )

    s_diag, f_diag, split, f_mod = run()
    assert s_diag == [(1, 1), (1, 4), (4, 1)]
    assert f_diag is None
    assert split == ([1], [1, 2, 4])
    assert f_mod.left.coordinates() == [(1, 1)]
    assert f_mod.right.coordinates() == [(1, 1), (2, 1), (2, 2)]
    assert _median_seconds(run) < 1e-3


def test_c02_maximal_12x12():
    """12 x 12 maximal pattern: exactly (2,2,3), (2,3,2), (3,2,2); maximal; kron-verified; < 10 ms."""
    a = gen.example1()
    dec = decompose(a)
    assert sorted(d.sizes for d in dec.decompositions) == [(2, 2, 3), (2, 3, 2), (3, 2, 2)]
    assert dec.is_maximal
    assert all(_kron_oracle_ok(a, d.factors) for d in dec.decompositions)
    assert _median_seconds(lambda: decompose(a)) < 10e-3


def test_c03_partial_decomposition_graph():
    """12 x 12 partial pattern: L = {2,3,4}; branches give (3,4) and (2,2,3); path 2->4, isolated 3."""
    dec = decompose(gen.example2())
    assert dec.lefts == [2, 3, 4]
    assert len(dec.branches) == 2
    assert sorted(d.sizes for d in dec.decompositions) == [(2, 2, 3), (3, 4)]
    g = dec.graph
    assert [(e.source, e.target, e.weight) for e in g.edges] == [(2, 4, 2)]
    assert [v for _, v in g.isolated] == [3]


def test_c04_identity24():
    """identity(24): L = {2,3,4,6,8,12}; the four branches; maximal-pattern counts."""
    dec = decompose(BinaryPattern.identity(24))
    assert dec.lefts == [2, 3, 4, 6, 8, 12]
    assert [list(b.chain) for b in dec.branches] == [[2, 4, 8], [2, 4, 12], [2, 6, 12], [3, 6, 12]]
    assert [d.sizes for d in dec.decompositions] == [(2, 2, 2, 3), (2, 2, 3, 2), (2, 3, 2, 2), (3, 2, 2, 2)]
    assert all(d.length == 4 for d in dec.decompositions)
    assert len(dec.decompositions) == math.factorial(4) // (math.factorial(3) * math.factorial(1))


def test_c05_squared_maximal_36():
    """6 x 6 maximal pattern squared: five prime decompositions of size 36, none (2,2,3,3)."""
    decs = all_prime_decompositions(gen.example5())
    assert len(decs) == 5
    assert (2, 2, 3, 3) not in [d.sizes for d in decs]


def test_c06_oracle_roundtrip():
    """10^4 random prime tuples: generating sizes recovered, all outputs kron-verify; < 60 s."""
    rng = np.random.default_rng(6)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(10_000):
        sizes = tuple(int(s) for s in rng.choice([2, 3, 5, 7], size=rng.integers(2, 5)))
        factors = []
        for s in sizes:
            density = rng.uniform(0.2, 0.8)
            m = rng.random((s, s)) < density
            while not m.any():
                m = rng.random((s, s)) < density
            # every nonzero pattern of prime size is prime
            factors.append(BinaryPattern.from_dense(m))
        a = kron_all(factors)
        decs = all_prime_decompositions(a)
        ok = sizes in [d.sizes for d in decs] and all(kron_all(d.factors) == a for d in decs)
        failures += not ok
    elapsed = time.perf_counter() - t0
    assert failures == 0
    assert elapsed < 60


@pytest.mark.parametrize("n", [8, 12, 16, 24, 36, 48])
def test_c07_maximal_pattern_counts(n):
    """Identity and all-ones: prime sizes, length sum(k_j), count l!/prod(k_j!)."""
    f = prime_factorization(n)
    length = sum(f.exponents)
    count = math.factorial(length) // math.prod(math.factorial(k) for k in f.exponents)
    for a in (BinaryPattern.identity(n), BinaryPattern.ones(n)):
        decs = all_prime_decompositions(a)
        assert len(decs) == count
        assert all(len(d.sizes) == length for d in decs)
        assert all(Counter(d.sizes) == Counter(f.multiset()) for d in decs)
        assert {d.sizes for d in decs} == prime_multiset_orderings(n)


def test_c08_random_primality_rate():
    """10^5 Be(1/2) size-4 patterns: fraction <= 2^-8 + 3 sqrt(2^-8 / 10^5)."""
    trials = 100_000
    rng = np.random.default_rng(8)
    bits = rng.random((trials, 4, 4)) < 0.5
    hits = 0
    for m in bits:
        # the zero pattern counts as factorizable: the bound covers it
        if not m.any() or try_factorize(BinaryPattern.from_dense(m), 2, 2) is not None:
            hits += 1
    p = factorizable_probability_bound(4)
    assert p == 2.0**-8
    assert hits / trials <= p + 3 * math.sqrt(p / trials)


def test_c09_nkp():
    """Exact products: rel. error <= 1e-10, Eckart-Young to 1e-8, sigma vs SVD oracle 1e-8;
    two-term B: sparsity sizes recovered and beat two mismatched tuples."""
    rng = np.random.default_rng(9)
    for n1, n2 in [(3, 4), (4, 4), (2, 6)]:
        for _ in range(100):
            x, y = rng.standard_normal((n1, n1)), rng.standard_normal((n2, n2))
            b = np.kron(x, y)
            res = nkp2(b, n1, n2)
            norm2 = float(np.sum(b * b))
            assert res.frobenius_error <= 1e-10 * math.sqrt(norm2)
            assert abs(res.frobenius_error**2 + res.sigma**2 - norm2) <= 1e-8 * norm2
            oracle = jacobi_singular_values(naive_rearrange(b, n1, n2))[0]
            assert abs(res.sigma - oracle) <= 1e-8 * oracle

    b = gen.two_term_matrix((5, 4, 6))
    sizes = [d.sizes for d in all_prime_decompositions(BinaryPattern.from_dense(b))]
    assert (5, 4, 6) in sizes
    good = nkp_multi(b, (5, 4, 6)).frobenius_error
    assert good < nkp_multi(b, (5, 6, 4)).frobenius_error
    assert good < nkp_multi(b, (10, 2, 6)).frobenius_error


def test_c10_layout(tmp_path):
    """(4,3,2) layout: 24 vertices, 56 edges, self-similar to 1e-10, byte-identical SVG."""
    a = gen.graph_adjacency()
    cfg = LayoutConfig((4, 3, 2))
    lay = layout_positions(cfg)
    segs = edge_segments(a, lay)
    assert lay.n_vertices == 24 and len(segs) == 56
    pts = lay.points
    for level in (1, 2):
        groups = pts.reshape(-1, math.prod(cfg.sizes[level:]))
        d0 = np.abs(groups[0][:, None] - groups[0][None, :])
        for g in groups[1:]:
            assert np.max(np.abs(np.abs(g[:, None] - g[None, :]) - d0)) <= 1e-10
    paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
    for p in paths:
        lay_p = layout_positions(LayoutConfig((4, 3, 2)))
        write_svg(lay_p, edge_segments(a, lay_p), SvgStyle(), p)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_c11_gate_shape():
    """Seeded kron of prime patterns of sizes (4,8,2): unique prime decomposition (4,8,2)."""
    a, factors = gen.random_kron((4, 8, 2), 0.5, gen.DEFAULT_SEED)
    decs = all_prime_decompositions(a)
    assert [d.sizes for d in decs] == [(4, 8, 2)]
    assert list(decs[0].factors) == factors
    assert [d.sizes for d in all_prime_decompositions(gen.gate_pattern())] == [(4, 8, 2)]


def test_c12_performance():
    """n = 53568, ~1.1e6 nonzeros: full factorization pipeline < 5 s."""
    a = gen.hierarchical_banded()
    assert a.size == 53568 and a.nnz > 10**6
    t0 = time.perf_counter()
    dec = decompose(a)
    elapsed = time.perf_counter() - t0
    assert [d.sizes for d in dec.decompositions] == [(31, 12, 12, 12)]
    assert elapsed < 5.0
