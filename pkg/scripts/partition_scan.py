#!/usr/bin/env python3
"""Torus partition function: brute-force arrow enumeration against Tr(V^M).

Example:
    python scripts/partition_scan.py --max-cells 12 --c-values 0.5,1.0,2.0
"""

import argparse
import time

from bethe6v import VertexWeights, partition_function_bruteforce, trace_power


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-cells", type=int, default=12,
                        help="largest N*M torus to enumerate")
    parser.add_argument("--c-values", default="0.5,1.0,2.0")
    args = parser.parse_args()
    c_values = [float(v) for v in args.c_values.split(",")]

    pairs = [
        (N, M)
        for N in range(2, args.max_cells // 2 + 1)
        for M in range(2, args.max_cells // N + 1)
    ]
    print(f"{'N':>3} {'M':>3} {'c':>6} {'Z (enumerated)':>18} "
          f"{'Tr V^M':>18} {'rel diff':>10} {'time':>7}")
    for N, M in pairs:
        for c in c_values:
            w = VertexWeights(c=c)
            t0 = time.perf_counter()
            z = partition_function_bruteforce(N, M, w, enum_cap=args.max_cells)
            elapsed = time.perf_counter() - t0
            t = trace_power(N, M, w)
            print(f"{N:>3} {M:>3} {c:>6.2f} {z:>18.10f} {t:>18.10f} "
                  f"{abs(z - t) / t:>10.1e} {elapsed:>6.2f}s")


if __name__ == "__main__":
    main()
