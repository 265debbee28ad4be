#!/usr/bin/env python3
"""Tables of (partition, topology) pairs whose blocks are open, closed or
connected, split by number of blocks.

Open blocks of a partition are automatically closed, so the first two
columns coincide; the script prints both as a sanity check.
"""
import argparse

from topocount.counting import BLOCK_CONDITIONS, count_topological_partitions, stirling2


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=4)
    args = ap.parse_args()

    for n in range(args.n_max + 1):
        print(f"n={n}")
        print(f"  {'k':>2} {'S(n,k)':>7} " + " ".join(f"{c:>10}" for c in BLOCK_CONDITIONS))
        for k in range(n + 1):
            counts = [count_topological_partitions(n, c, k=k) for c in BLOCK_CONDITIONS]
            print(f"  {k:>2} {stirling2(n, k):>7} " + " ".join(f"{v:>10}" for v in counts))
        totals = [count_topological_partitions(n, c) for c in BLOCK_CONDITIONS]
        print(f"  {'all':>2} {'':>7} " + " ".join(f"{v:>10}" for v in totals))


if __name__ == "__main__":
    main()
