#!/usr/bin/env python3
"""Prefix evidence for eventual periodicity of residue tracks.

Runs mc_report on classical sequences (Bell, Catalan, central binomial
halves, r-Bell) and on counted topology sequences, then prints one summary
line per (sequence, modulus).  Pass --json to dump the full reports.
"""
import argparse
import json

from topocount import builtin
from topocount.counting import (
    SequenceRecord, bell_numbers, catalan, count_sequence,
    half_central_binomial, r_bell,
)
from topocount.seqanalysis import mc_report


def classical_records(length: int) -> list[SequenceRecord]:
    return [
        SequenceRecord("bell", 0, bell_numbers(length)),
        SequenceRecord("catalan", 0, [catalan(n) for n in range(length)]),
        SequenceRecord("half_central_binomial", 1, [half_central_binomial(n) for n in range(1, length + 1)]),
        SequenceRecord("r_bell(r=2)", 2, [r_bell(n, 2) for n in range(2, length + 2)]),
    ]


def counted_records(n_max: int, jobs: int) -> list[SequenceRecord]:
    out = []
    for name in ("true", "t0", "connected"):
        out.append(count_sequence(builtin(name), range(n_max + 1), label=f"T[{name}]", jobs=jobs))
    out.append(count_sequence(
        builtin("minimal_open_const", r=1), range(n_max), r=1, label="T[minimal_open_const; r=1]", jobs=jobs,
    ))
    return out


def summarize(report: dict) -> list[str]:
    lines = []
    for e in report["moduli"]:
        period = e["period"]
        per = f"q={period['preperiod']} p={period['period']} conf={period['confidence']:.2f}" if period else "no period"
        rec = e["recurrence"]
        rec_s = f"order {rec['order']}" if rec else e["recurrence_status"]
        lines.append(f"{report['label']:<30} m={e['modulus']:<3} {per:<28} {rec_s:<18} {e['verdict']}")
    return lines


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--length", type=int, default=64, help="terms of each classical sequence")
    ap.add_argument("--n-max", type=int, default=5, help="largest n for counted sequences")
    ap.add_argument("--moduli", default="2,3,4,5")
    ap.add_argument("--max-order", type=int, default=8)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    moduli = [int(m) for m in args.moduli.split(",")]

    records = classical_records(args.length) + counted_records(args.n_max, args.jobs)
    reports = [mc_report(rec, moduli, max_order=args.max_order) for rec in records]
    if args.json:
        print(json.dumps(reports, indent=2))
        return
    for rep in reports:
        for line in summarize(rep):
            print(line)


if __name__ == "__main__":
    main()
