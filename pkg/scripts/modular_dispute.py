#!/usr/bin/env python3
"""Residues of T(n), the number of topologies on [n], modulo small primes.

Counts T(0..N) by enumeration, prints the residue table and checks a
candidate value for T(N) against every residue.  A candidate that disagrees
with any residue cannot be the count.

    python scripts/modular_dispute.py --n 5 --candidate 7181
"""
import argparse
import json
import time

from topocount import builtin
from topocount.counting import CountQuery, count_topologies


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--moduli", default="2,3,5,7")
    ap.add_argument("--candidate", type=int, default=7181)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    moduli = tuple(int(m) for m in args.moduli.split(","))

    f = builtin("true")
    rows = []
    for n in range(args.n + 1):
        t0 = time.perf_counter()
        res = count_topologies(CountQuery(f, 0, n, moduli), jobs=args.jobs)
        rows.append((n, res.count, res.residues, time.perf_counter() - t0))

    print(f"{'n':>2} {'T(n)':>8} " + " ".join(f"mod{m:<2}" for m in moduli) + "  secs")
    for n, count, residues, secs in rows:
        print(f"{n:>2} {count:>8} " + " ".join(f"{residues[m]:>5}" for m in moduli) + f"  {secs:.2f}")

    _, count, residues, _ = rows[-1]
    checks = {m: (args.candidate % m, residues[m]) for m in moduli}
    ruled_out = [m for m, (c, t) in checks.items() if c != t]
    print()
    for m, (c, t) in checks.items():
        flag = "differs" if c != t else "agrees"
        print(f"{args.candidate} mod {m} = {c}, T({args.n}) mod {m} = {t}: {flag}")
    print(json.dumps({
        "n": args.n,
        "count": str(count),
        "candidate": str(args.candidate),
        "ruled_out_by": ruled_out,
    }))


if __name__ == "__main__":
    main()
