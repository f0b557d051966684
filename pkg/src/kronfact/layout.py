"""Nested-circle layout of Kronecker graphs.

Level ``j`` places ``n_j`` points on a circle of radius ``r_j``.  Going up
the hierarchy, each sub-layout is rotated by the phase of its anchor point
(plus a fixed shift) and translated onto it.  Vertex multi-indices
``(k1, ..., kd)`` map to Kronecker row indices with ``kd`` varying fastest,
so the vertex order agrees with the row order of ``A1 ⊗ ... ⊗ Ad``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import DomainError
from .pattern import BinaryPattern

RADIUS_DECAY = 0.35


def default_radii(depth: int, first: float = 1.0) -> tuple[float, ...]:
    return tuple(first * RADIUS_DECAY**j for j in range(depth))


@dataclass(frozen=True)
class LayoutConfig:
    sizes: tuple[int, ...]
    radii: Optional[tuple[float, ...]] = None
    shift: float = math.pi / 2

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise DomainError(f"sizes must be a nonempty tuple of positive ints, got {self.sizes}")
        radii = default_radii(len(sizes)) if self.radii is None else tuple(map(float, self.radii))
        if len(radii) != len(sizes):
            raise DomainError(f"{len(sizes)} sizes but {len(radii)} radii")
        if any(r <= 0 for r in radii) or any(b >= a for a, b in zip(radii, radii[1:])):
            raise DomainError(f"radii must be positive and strictly decreasing, got {radii}")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "radii", radii)


@dataclass(frozen=True)
class LayoutResult:
    config: LayoutConfig
    points: np.ndarray  # complex, indexed by row index - 1

    @property
    def n_vertices(self) -> int:
        return int(self.points.size)

    @property
    def x(self) -> np.ndarray:
        return self.points.real

    @property
    def y(self) -> np.ndarray:
        return self.points.imag

    @property
    def positions(self) -> dict[tuple[int, ...], tuple[float, float]]:
        sizes = self.config.sizes
        return {
            multi_index(u + 1, sizes): (float(p.real), float(p.imag))
            for u, p in enumerate(self.points)
        }


class Segment(NamedTuple):
    start: tuple[float, float]
    end: tuple[float, float]
    source: int
    target: int

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


def circle_points(n: int, r: float) -> np.ndarray:
    """``r * exp(2πi (k-1)/n)`` for ``k = 1..n``."""
    if n < 1 or r <= 0:
        raise DomainError(f"circle_points needs n >= 1 and r > 0, got ({n}, {r})")
    return r * np.exp(2j * np.pi * np.arange(n) / n)


def layout_positions(config: LayoutConfig) -> LayoutResult:
    sizes, radii = config.sizes, config.radii
    g = circle_points(sizes[-1], radii[-1])
    for n, r in zip(reversed(sizes[:-1]), reversed(radii[:-1])):
        z = circle_points(n, r)
        rot = np.exp(1j * (np.angle(z) + config.shift))
        g = (z[:, None] + rot[:, None] * g[None, :]).ravel()
    return LayoutResult(config, g)


def vertex_row_index(k: Sequence[int], sizes: Sequence[int]) -> int:
    if len(k) != len(sizes):
        raise DomainError(f"multi-index {tuple(k)} does not match sizes {tuple(sizes)}")
    idx = 0
    for ki, ni in zip(k, sizes):
        if not 1 <= ki <= ni:
            raise DomainError(f"multi-index {tuple(k)} out of range for sizes {tuple(sizes)}")
        idx = idx * ni + (ki - 1)
    return idx + 1


def multi_index(u: int, sizes: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`vertex_row_index`."""
    total = math.prod(sizes)
    if not 1 <= u <= total:
        raise DomainError(f"vertex {u} out of range 1..{total}")
    u -= 1
    out = []
    for ni in reversed(sizes):
        u, rem = divmod(u, ni)
        out.append(rem + 1)
    return tuple(reversed(out))


def edge_segments(a: BinaryPattern, layout: LayoutResult) -> list[Segment]:
    """One segment per nonzero ``(u, v)`` of ``a``; self-loops come out degenerate."""
    if a.size != layout.n_vertices:
        raise DomainError(f"pattern size {a.size} != {layout.n_vertices} vertices")
    pts = layout.points
    out = []
    for u, v in zip(a.rows.tolist(), a.cols.tolist()):
        p, q = pts[u - 1], pts[v - 1]
        out.append(Segment((float(p.real), float(p.imag)), (float(q.real), float(q.imag)), u, v))
    return out


def vertex_radius(config: LayoutConfig) -> float:
    """Marker radius: a quarter of the spacing between neighbours on the smallest circle."""
    n, r = config.sizes[-1], config.radii[-1]
    spacing = 2 * r * math.sin(math.pi / n) if n > 1 else r
    return 0.25 * spacing
