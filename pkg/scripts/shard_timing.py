#!/usr/bin/env python3
"""Wall-clock cost of counting T(n) with different worker counts.

Every shard walks the same preorder stream and keeps every j-th item, so
the totals must agree exactly; the script asserts that.
"""
import argparse
import time

from topocount import builtin
from topocount.counting import CountQuery, count_topologies


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--builtin", default="true")
    ap.add_argument("--jobs", default="1,2,4,8")
    args = ap.parse_args()

    q = CountQuery(builtin(args.builtin), 0, args.n)
    seen = set()
    for j in (int(x) for x in args.jobs.split(",")):
        t0 = time.perf_counter()
        count = count_topologies(q, jobs=j).count
        print(f"jobs={j:<3} count={count} secs={time.perf_counter() - t0:.2f}")
        seen.add(count)
    assert len(seen) == 1, f"counts differ across worker counts: {sorted(seen)}"


if __name__ == "__main__":
    main()
