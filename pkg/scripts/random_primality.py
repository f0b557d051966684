"""Monte Carlo estimate of how often a random binary pattern is factorizable.

Compares the empirical rate with the union bound sum 2^(n1^2+n2^2) / 2^(n^2).

    python3 scripts/random_primality.py [--trials 100000] [--sizes 4,6]
"""

import argparse
import math

import numpy as np

from kronfact.engine import all_length2
from kronfact.numtheory import factorizable_log2_bound, factorizable_probability_bound
from kronfact.pattern import BinaryPattern


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--sizes", default="4,6")
    ap.add_argument("--seed", type=int, default=2)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    for n in (int(s) for s in args.sizes.split(",")):
        hits = 0
        for _ in range(args.trials):
            m = rng.random((n, n)) < 0.5
            if not m.any() or all_length2(BinaryPattern.from_dense(m)):
                hits += 1
        p = factorizable_probability_bound(n)
        band = p + 3 * math.sqrt(p / args.trials)
        print(
            f"n={n}: empirical {hits}/{args.trials} = {hits / args.trials:.3e}, "
            f"bound 2^{factorizable_log2_bound(n):.1f} = {p:.3e}, 3-sigma ceiling {band:.3e}"
        )


if __name__ == "__main__":
    main()
