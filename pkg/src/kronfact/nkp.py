"""Nearest Kronecker product approximation of real matrices.

Dense matrices are plain 2-D ``numpy`` float arrays.  The two-factor
approximation takes the dominant singular triplet of the rearranged
matrix; longer products are obtained greedily, splitting off one factor at
a time from the left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DomainError, NonConvergenceError

DEFAULT_TOL = 1e-10
DEFAULT_MAXIT = 5000
RESTART_SEED = 0x5EED
# beyond this size frobenius_error streams the product block by block
MATERIALIZE_LIMIT = 4096


@dataclass
class NkpResult:
    factors: list[np.ndarray]
    sizes: tuple[int, ...]
    frobenius_error: float
    sigma: float
    # leading singular value at each greedy split, outermost first
    sigmas: list[float] = field(default_factory=list)
    method: str = "rank-1 rearrangement"

    def product(self) -> np.ndarray:
        return reduce(np.kron, self.factors)


def _as_square(b, name="B") -> np.ndarray:
    b = np.asarray(b, dtype=float)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise DomainError(f"{name} must be square, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise DomainError(f"{name} has non-finite entries")
    return b


def rearrange(b, n1: int, n2: int) -> np.ndarray:
    """Van Loan rearrangement: an ``n1² x n2²`` matrix, rank one iff ``b`` is a Kronecker product.

    Entry ``(l1, l2)`` (0-based column-major indices of the outer block
    ``(i1, j1)`` and the inner offset ``(i2, j2)``) holds
    ``b[i1*n2 + i2, j1*n2 + j2]``.
    """
    b = _as_square(b)
    if n1 < 1 or n2 < 1 or n1 * n2 != b.shape[0]:
        raise DomainError(f"sizes ({n1}, {n2}) do not match a matrix of size {b.shape[0]}")
    # axes (i1, i2, j1, j2) -> (j1, i1, j2, i2)
    return b.reshape(n1, n2, n1, n2).transpose(2, 0, 3, 1).reshape(n1 * n1, n2 * n2)


_STALL_WINDOW = 100


def _power_run(m, v, tol, maxit):
    """One power-iteration run.  Returns ``(sigma, u, v, residual, iterations, stalled)``."""
    sigma = 0.0
    prev = -1.0
    residual = math.inf
    checkpoint = math.inf
    u = np.zeros(m.shape[0])
    for it in range(1, maxit + 1):
        w = m @ v
        sigma = float(np.linalg.norm(w))
        if sigma == 0.0:
            return 0.0, u, v, math.inf, it, True
        u = w / sigma
        z = m.T @ u
        residual = float(np.linalg.norm(z - sigma * v))
        if residual <= tol * sigma:
            return sigma, u, v, residual, it, False
        steady = abs(sigma - prev) <= tol * sigma
        prev = sigma
        if it % _STALL_WINDOW == 0:
            # sigma settled but the residual stopped shrinking over a whole window
            if steady and residual > 0.9 * checkpoint:
                return sigma, u, v, residual, it, True
            checkpoint = residual
        v = z / np.linalg.norm(z)
    return sigma, u, v, residual, maxit, False


def dominant_singular_triplet(m, tol: float = DEFAULT_TOL, maxit: int = DEFAULT_MAXIT):
    """Largest singular value and unit vectors ``(sigma, u, v)`` by power iteration on ``MᵀM``.

    Starts from the normalized all-ones vector; if that stalls (or lies in
    the null space) it restarts once from a seeded random vector.  On exit
    ``M v = sigma u`` holds exactly and ``‖Mᵀu - sigma v‖ <= tol * sigma``.
    The sign is fixed so the largest-magnitude entry of ``u`` is positive.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or not np.any(m):
        raise DomainError("dominant_singular_triplet needs a nonzero matrix")
    v0 = np.full(m.shape[1], 1.0 / math.sqrt(m.shape[1]))
    sigma, u, v, res, used, stalled = _power_run(m, v0, tol, maxit)
    if stalled:
        rng = np.random.default_rng(RESTART_SEED)
        v0 = rng.standard_normal(m.shape[1])
        v0 /= np.linalg.norm(v0)
        sigma, u, v, res, more, _ = _power_run(m, v0, tol, max(1, maxit - used))
        used += more
    if not res <= tol * sigma:
        raise NonConvergenceError(
            f"power iteration did not reach tol={tol:g} in {maxit} iterations",
            sigma=sigma, u=u, v=v, residual=res,
        )
    k = int(np.argmax(np.abs(u)))
    if u[k] < 0:
        u, v = -u, -v
    return sigma, u, v


def frobenius_error(b, factors: Sequence[np.ndarray]) -> float:
    """``‖B - F1 ⊗ ... ⊗ Fk‖_F``, without forming the product for large sizes."""
    b = _as_square(b)
    factors = [np.atleast_2d(np.asarray(f, dtype=float)) for f in factors]
    n = math.prod(f.shape[0] for f in factors)
    if n != b.shape[0] or any(f.shape[0] != f.shape[1] for f in factors):
        raise DomainError("factor sizes do not match the matrix")
    if n <= MATERIALIZE_LIMIT or len(factors) == 1:
        return float(np.linalg.norm(b - reduce(np.kron, factors)))
    head, rest = factors[0], reduce(np.kron, factors[1:])
    r = rest.shape[0]
    total = 0.0
    for i in range(head.shape[0]):
        for j in range(head.shape[1]):
            blk = b[i * r : (i + 1) * r, j * r : (j + 1) * r]
            total += float(np.sum((blk - head[i, j] * rest) ** 2))
    return math.sqrt(total)


def _nkp2_factors(b, n1, n2, tol, maxit):
    sigma, u, v = dominant_singular_triplet(rearrange(b, n1, n2), tol, maxit)
    s = math.sqrt(sigma)
    b1 = (s * u).reshape(n1, n1, order="F")
    b2 = (s * v).reshape(n2, n2, order="F")
    return b1, b2, sigma


def nkp2(b, n1: int, n2: int, tol: float = DEFAULT_TOL, maxit: int = DEFAULT_MAXIT) -> NkpResult:
    """Best ``B1 ⊗ B2`` approximation in the Frobenius norm; both factors share the same norm."""
    b = _as_square(b)
    if not np.any(b):
        raise DomainError("cannot approximate the zero matrix")
    b1, b2, sigma = _nkp2_factors(b, n1, n2, tol, maxit)
    return NkpResult([b1, b2], (n1, n2), frobenius_error(b, [b1, b2]), sigma, [sigma])


def nkp_multi(
    b, sizes: Sequence[int], tol: float = DEFAULT_TOL, maxit: int = DEFAULT_MAXIT
) -> NkpResult:
    """Greedy left-to-right Kronecker approximation with any number of factors.

    Not optimal for three or more factors.  Factors are rescaled to equal
    Frobenius norm.
    """
    b = _as_square(b)
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) < 2:
        raise DomainError("need at least two factor sizes")
    if any(s < 1 for s in sizes) or math.prod(sizes) != b.shape[0]:
        raise DomainError(f"sizes {sizes} do not multiply to {b.shape[0]}")
    if not np.any(b):
        raise DomainError("cannot approximate the zero matrix")
    factors = []
    sigmas = []
    rest = b
    for k, s in enumerate(sizes[:-1]):
        left, rest, sigma = _nkp2_factors(rest, s, math.prod(sizes[k + 1 :]), tol, maxit)
        factors.append(left)
        sigmas.append(sigma)
    factors.append(rest)
    norms = [float(np.linalg.norm(f)) for f in factors]
    if all(x > 0 for x in norms):
        target = math.exp(sum(math.log(x) for x in norms) / len(norms))
        factors = [f * (target / x) for f, x in zip(factors, norms)]
    method = "rank-1 rearrangement" if len(sizes) == 2 else "greedy left-to-right rank-1"
    return NkpResult(factors, sizes, frobenius_error(b, factors), sigmas[0], sigmas, method)
