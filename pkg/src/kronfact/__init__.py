"""Kronecker factorization of sparse binary matrices.

Finds every Kronecker decomposition of a binary sparsity pattern, draws the
decomposition graph and nested-circle Kronecker graph layouts, and feeds the
discovered sizes to nearest-Kronecker-product approximation of real matrices.
"""

from .branches import (
    Branch,
    Decomposition,
    DecompositionGraph,
    PrimeDecomposition,
    all_prime_decompositions,
    build_branches,
    compose_prime_decomposition,
    decompose,
    decomposition_graph,
    sizes_of,
)
from .engine import (
    Length2Factorization,
    RearrangedSupport,
    all_length2,
    extract_right_factor,
    is_maximal,
    is_prime,
    rearranged_support,
    try_factorize,
)
from .errors import (
    ConsistencyError,
    DomainError,
    EmptyPatternError,
    KronfactError,
    NonConvergenceError,
    ParseError,
)
from .pattern import (
    BinaryPattern,
    Coordinate,
    inverse_linear_index,
    kron_all,
    kron_pattern,
    linear_index,
    split_coordinate,
)

__version__ = "0.1.0"
