"""Timing of the length-2 test against nnz, with a log-log slope fit.

    python3 scripts/complexity_slope.py [--max-nnz 1e7] [--repeats 3]
"""

import argparse
import time

import numpy as np

from kronfact import generators as gen
from kronfact.engine import rearranged_support, try_factorize
from kronfact.pattern import BinaryPattern, kron_pattern


def median_time(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-nnz", type=float, default=1e7)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    rows = []
    # density 1/4 times the 16 entries of the ones block: nnz ~ 4 size^2
    targets = 10 ** np.arange(3.0, np.log10(args.max_nnz) + 0.01, 0.5)
    for target in targets:
        size = int(round(np.sqrt(target / 4)))
        a = kron_pattern(gen.random_pattern(size, 0.25, 1), BinaryPattern.ones(4))
        t_fact = median_time(lambda: try_factorize(a, size, 4), args.repeats)
        t_sort = median_time(lambda: rearranged_support(a, size, 4).cartesian_split(), args.repeats)
        rows.append((a.nnz, t_fact, t_sort))
        print(f"nnz={a.nnz:>10d}  try_factorize {t_fact * 1e3:9.2f} ms  group-by route {t_sort * 1e3:9.2f} ms", flush=True)

    nnz, t1, t2 = map(np.array, zip(*rows))
    big = nnz >= 1e4
    for name, t in (("try_factorize", t1), ("group-by route", t2)):
        slope = np.polyfit(np.log(nnz[big]), np.log(t[big]), 1)[0]
        print(f"log-log slope ({name}, nnz >= 1e4): {slope:.3f}")


if __name__ == "__main__":
    main()
