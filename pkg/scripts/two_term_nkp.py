"""Sparsity-informed sizes versus mismatched sizes on a synthetic two-term matrix.

Builds B = W ⊗ M + M' ⊗ K from banded seeded factors, recovers candidate
sizes from sparsity(B), and compares nkp_multi relative errors.

    python3 scripts/two_term_nkp.py [--sizes 5,4,6] [--seed 7]
"""

import argparse
import itertools
import math

import numpy as np

from kronfact import generators as gen
from kronfact.branches import decompose
from kronfact.nkp import nkp_multi
from kronfact.numtheory import divisors
from kronfact.pattern import BinaryPattern


def tuples_of(n, length):
    """Every ordered tuple of ``length`` factors > 1 multiplying to n."""
    if length == 1:
        return [(n,)] if n > 1 else []
    out = []
    for d in divisors(n)[1:-1]:
        out += [(d, *rest) for rest in tuples_of(n // d, length - 1)]
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="5,4,6")
    ap.add_argument("--seed", type=int, default=gen.DEFAULT_SEED)
    args = ap.parse_args()
    sizes = tuple(int(s) for s in args.sizes.split(","))

    b = gen.two_term_matrix(sizes, args.seed)
    norm = np.linalg.norm(b)
    dec = decompose(BinaryPattern.from_dense(b))
    found = [d.sizes for d in dec.decompositions]
    print(f"n = {b.shape[0]}, nnz = {np.count_nonzero(b)}")
    print(f"prime decompositions of sparsity(B): {found}")

    results = []
    for t in tuples_of(math.prod(sizes), len(sizes)):
        res = nkp_multi(b, t)
        results.append((res.frobenius_error / norm, t))
    for rel, t in sorted(results):
        tag = "  <- sparsity-informed" if t in found else ""
        print(f"{str(t):>14}  relative error {rel:.4f}{tag}")


if __name__ == "__main__":
    main()
