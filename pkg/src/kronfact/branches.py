"""Prime decompositions assembled from length-2 factorizations.

A branch is a chain ``l0 | l1 | ... | lq`` of left sizes of length-2
factorizations where each step moves to a minimal proper multiple.  The
factorizations along a branch glue into one decomposition of sizes
``(l0, l1/l0, ..., lq/l(q-1), n/lq)``, and when every length-2
factorization was found, the glued decomposition is prime.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .engine import Length2Factorization, all_length2, extract_right_factor
from .errors import ConsistencyError, DomainError
from .numtheory import compatible_pairs, reduce_multiples
from .pattern import BinaryPattern, kron_all


@dataclass(frozen=True, order=True)
class Branch:
    chain: tuple[int, ...]

    def __post_init__(self):
        if not self.chain:
            raise DomainError("a branch needs at least one left size")
        for a, b in zip(self.chain, self.chain[1:]):
            if b <= a or b % a:
                raise DomainError(f"chain {self.chain} is not a strict divisor chain")

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(b // a for a, b in zip(self.chain, self.chain[1:]))

    @property
    def root(self) -> int:
        return self.chain[0]

    @property
    def last(self) -> int:
        return self.chain[-1]


@dataclass(frozen=True)
class PrimeDecomposition:
    sizes: tuple[int, ...]
    factors: tuple[BinaryPattern, ...]
    branch: Optional[Branch] = None

    @property
    def length(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    weight: int
    branch: int  # 1-based branch id
    position: int  # 0-based step along the branch


@dataclass(frozen=True)
class DecompositionGraph:
    n: int
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    # (branch id, vertex) for branches made of a single length-2 factorization
    isolated: tuple[tuple[int, int], ...]
    branches: tuple[Branch, ...]

    def path(self, branch_id: int) -> list[Edge]:
        return [e for e in self.edges if e.branch == branch_id]

    def read_sizes(self, branch_id: int) -> tuple[int, ...]:
        """Sizes read off the graph: root, the edge weights, then ``n / end``."""
        edges = self.path(branch_id)
        if not edges:
            root = dict(self.isolated)[branch_id]
            return root, self.n // root
        return (edges[0].source, *(e.weight for e in edges), self.n // edges[-1].target)


def build_branches(factorizations: Iterable, n: int) -> list[Branch]:
    """Depth-first enumeration of every branch over the left sizes.

    ``factorizations`` may hold :class:`Length2Factorization` objects or bare
    left sizes.
    """
    lefts = sorted(
        {f.n1 if isinstance(f, Length2Factorization) else int(f) for f in factorizations}
    )
    out: list[Branch] = []

    def walk(chain):
        multiples = [x for x in lefts if x != chain[-1] and x % chain[-1] == 0]
        if not multiples:
            out.append(Branch(tuple(chain)))
            return
        for nxt in reduce_multiples(multiples):
            walk(chain + [nxt])

    for root in reduce_multiples(lefts):
        walk([root])
    return sorted(out)


def sizes_of(branch: Branch, n: int) -> tuple[int, ...]:
    if n % branch.last:
        raise DomainError(f"{branch.last} does not divide {n}")
    return (branch.root, *branch.weights, n // branch.last)


def compose_prime_decomposition(
    a: BinaryPattern, branch: Branch, factorizations: Sequence[Length2Factorization]
) -> PrimeDecomposition:
    """Glue the length-2 factorizations of a branch, left to right."""
    by_left = {f.n1: f for f in factorizations}
    missing = [l for l in branch.chain if l not in by_left]
    if missing:
        raise DomainError(f"no length-2 factorization with left size {missing[0]}")
    steps = [by_left[l] for l in branch.chain]
    factors = [steps[0].left]
    for prev, cur, p in zip(steps, steps[1:], branch.weights):
        factors.append(extract_right_factor(cur.left, prev.left, p))
    factors.append(steps[-1].right)
    if kron_all(factors) != a:
        raise ConsistencyError(f"branch {branch.chain} does not reproduce the input")
    return PrimeDecomposition(sizes_of(branch, a.size), tuple(factors), branch)


def decomposition_graph(
    branches: Sequence[Branch], factorizations: Iterable, n: int
) -> DecompositionGraph:
    lefts = sorted(
        {f.n1 if isinstance(f, Length2Factorization) else int(f) for f in factorizations}
    )
    edges = []
    isolated = []
    for bid, br in enumerate(branches, start=1):
        if len(br.chain) == 1:
            isolated.append((bid, br.root))
        for pos, (u, v) in enumerate(zip(br.chain, br.chain[1:])):
            edges.append(Edge(u, v, v // u, bid, pos))
    return DecompositionGraph(n, tuple(lefts), tuple(edges), tuple(isolated), tuple(branches))


@dataclass
class Decomposition:
    """Everything learned about one pattern: length-2 set, branches, decompositions."""

    pattern: BinaryPattern
    pairs_tested: list[tuple[int, int]]
    length2: list[Length2Factorization]
    branches: list[Branch]
    decompositions: list[PrimeDecomposition]
    restricted: bool = False
    graph: DecompositionGraph = field(init=False)

    def __post_init__(self):
        self.graph = decomposition_graph(self.branches, self.length2, self.pattern.size)

    @property
    def lefts(self) -> list[int]:
        return [f.n1 for f in self.length2]

    @property
    def is_prime(self) -> bool:
        return not self.length2

    @property
    def is_maximal(self) -> bool:
        return (
            not self.restricted
            and bool(self.pairs_tested)
            and len(self.length2) == len(self.pairs_tested)
        )

    @property
    def primality_guaranteed(self) -> bool:
        return not self.restricted


def decompose(
    a: BinaryPattern,
    pairs: Optional[Iterable[tuple[int, int]]] = None,
    workers: Optional[int] = None,
) -> Decomposition:
    """Run the full pipeline.  With ``pairs`` given, factors may not be prime."""
    full = compatible_pairs(a.size) if a.size >= 2 else []
    tested = full if pairs is None else sorted(set((int(p), int(q)) for p, q in pairs))
    restricted = pairs is not None and tested != full
    f = all_length2(a, None if pairs is None else tested, workers=workers)
    branches = build_branches(f, a.size) if f else []
    decs = [compose_prime_decomposition(a, br, f) for br in branches]
    return Decomposition(a, tested, f, branches, decs, restricted)


def all_prime_decompositions(a: BinaryPattern, workers: Optional[int] = None) -> list[PrimeDecomposition]:
    return decompose(a, workers=workers).decompositions

