import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kronfact import generators as gen
from kronfact.errors import DomainError
from kronfact.layout import (
    LayoutConfig,
    circle_points,
    default_radii,
    edge_segments,
    layout_positions,
    multi_index,
    vertex_row_index,
)
from kronfact.pattern import BinaryPattern

sizes_st = st.lists(st.integers(1, 5), min_size=1, max_size=4).map(tuple)


def test_circle_points_examples():
    assert np.allclose(circle_points(1, 1), [1 + 0j])
    assert np.allclose(circle_points(4, 1), [1, 1j, -1, -1j], atol=1e-12)
    p = circle_points(3, 0.5)
    assert np.allclose(np.abs(p), 0.5)
    assert np.allclose(np.degrees(np.angle(p)) % 360, [0, 120, 240])


def test_circle_points_errors():
    with pytest.raises(DomainError):
        circle_points(0, 1)
    with pytest.raises(DomainError):
        circle_points(3, 0)


def test_config_validation():
    with pytest.raises(DomainError):
        LayoutConfig((4, 3), (1.0, 1.0))
    with pytest.raises(DomainError):
        LayoutConfig((4, 3), (1.0,))
    with pytest.raises(DomainError):
        LayoutConfig(())
    with pytest.raises(DomainError):
        LayoutConfig((0, 3))
    assert LayoutConfig((4, 3, 2)).radii == default_radii(3) == (1.0, 0.35, 0.35**2)


def test_single_level_is_circle():
    lay = layout_positions(LayoutConfig((4,), (1.0,)))
    assert np.allclose(lay.points, circle_points(4, 1.0))


def test_432_cluster_centroids():
    lay = layout_positions(LayoutConfig((4, 3, 2), (1, 0.35, 0.1225)))
    assert lay.n_vertices == 24
    clusters = lay.points.reshape(4, 6)
    roots = np.exp(2j * np.pi * np.arange(4) / 4)
    assert np.all(np.abs(clusters.mean(axis=1) - roots) < 0.2)


@given(st.integers(1, 6), st.integers(1, 6), st.floats(0.1, 0.9), st.floats(-3, 3))
def test_two_level_recursion_identity(n1, n2, ratio, shift):
    cfg = LayoutConfig((n1, n2), (1.0, ratio), shift)
    pts = layout_positions(cfg).points.reshape(n1, n2)
    z1, z2 = circle_points(n1, 1.0), circle_points(n2, ratio)
    for k in range(n1):
        rot = np.exp(1j * (np.angle(z1[k]) + shift))
        assert np.allclose(pts[k], z1[k] + rot * z2, atol=1e-14)


def _dists(p):
    return np.abs(p[:, None] - p[None, :])


@given(sizes_st)
def test_self_similarity(sizes):
    lay = layout_positions(LayoutConfig(sizes))
    pts = lay.points
    for level in range(1, len(sizes)):
        block = math.prod(sizes[level:])
        # siblings share their first `level` indices
        groups = pts.reshape(-1, block)
        ref = _dists(groups[0])
        for g in groups[1:]:
            assert np.max(np.abs(_dists(g) - ref)) <= 1e-10


@given(sizes_st)
def test_boundedness_and_count(sizes):
    cfg = LayoutConfig(sizes)
    lay = layout_positions(cfg)
    assert lay.n_vertices == math.prod(sizes)
    assert np.all(np.isfinite(lay.x)) and np.all(np.isfinite(lay.y))
    assert np.max(np.abs(lay.points)) <= sum(cfg.radii) + 1e-12
    assert len(lay.positions) == lay.n_vertices


def test_determinism():
    a = layout_positions(LayoutConfig((4, 3, 2))).points
    b = layout_positions(LayoutConfig((4, 3, 2))).points
    assert a.tobytes() == b.tobytes()


def test_vertex_row_index_examples():
    assert vertex_row_index((1, 1, 1), (4, 3, 2)) == 1
    assert vertex_row_index((4, 3, 2), (4, 3, 2)) == 24
    assert vertex_row_index((2, 1, 1), (4, 3, 2)) == 7
    with pytest.raises(DomainError):
        vertex_row_index((5, 1, 1), (4, 3, 2))
    with pytest.raises(DomainError):
        vertex_row_index((1, 1), (4, 3, 2))


@given(sizes_st)
def test_multi_index_inverts_row_index(sizes):
    n = math.prod(sizes)
    for u in range(1, n + 1):
        assert vertex_row_index(multi_index(u, sizes), sizes) == u


def test_row_index_matches_kronecker_rows():
    # a basis-vector Kronecker product has its 1 at the row of the multi-index
    sizes = (4, 3, 2)
    for k in [(1, 1, 1), (2, 3, 1), (4, 3, 2)]:
        v = np.ones(1)
        for ki, ni in zip(k, sizes):
            v = np.kron(v, np.eye(ni)[ki - 1])
        assert int(np.flatnonzero(v)[0]) + 1 == vertex_row_index(k, sizes)


def test_edge_segments():
    a = gen.graph_adjacency()
    lay = layout_positions(LayoutConfig((4, 3, 2)))
    segs = edge_segments(a, lay)
    assert len(segs) == 56 == 7 * 4 * 2
    u, v = segs[0].source, segs[0].target
    assert segs[0].start == (lay.x[u - 1], lay.y[u - 1]) and segs[0].end == (lay.x[v - 1], lay.y[v - 1])
    assert edge_segments(BinaryPattern(24), lay) == []
    loops = edge_segments(BinaryPattern.identity(6), layout_positions(LayoutConfig((3, 2))))
    assert len(loops) == 6 and all(s.is_loop and s.start == s.end for s in loops)
    with pytest.raises(DomainError):
        edge_segments(BinaryPattern.identity(5), lay)
