"""Command-line entry point: ``topocount <command> ...``.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors
(bad flags, malformed formulas or structures, caps exceeded).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .config import FORMATS, Config, ConfigError, load_config
from .counting import CountError, CountQuery, ResultCache, SequenceRecord, count_topologies
from .evaluator import CompiledFormula, Environment, EvaluationError, parse_binding
from .logic import BUILTIN_NAMES, Dialect, FormulaSyntaxError, Sort, builtin, builtin_text
from .logic.ast import max_constant
from .logic.syntax import parse_formula, render_formula
from .seqanalysis import chunk_frequencies, mc_report, reduce_mod
from .structures import StructureError, StructureKind, Topology, enumerate_structures, load_structure
from .suites import SUITES, run_suite
from .translation import TranslationError, phi_sharp, psi_sharp

DEFAULT_SUITE_N = {
    "alexandroff-roundtrip": 4,
    "translation-equivalence": 4,
    "stirling-identity": 5,
    "catalan-parity": 64,
    "noncrossing-catalan": 9,
    "oeis-prefixes": 5,
}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _n_range(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}")
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad size range {text!r}")
    return range(lo, hi + 1)


def _chunks(text: str) -> tuple[int, int]:
    parts = _int_list(text)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("--chunks takes b,l")
    return parts[0], parts[1]


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help="JSON config file (default: $TOPOCOUNT_CONFIG)")
    g.add_argument("--format", choices=FORMATS)
    g.add_argument("--enum-cap", type=int)
    g.add_argument("--fol-cap", type=int)
    g.add_argument("--mso-cap", type=int)


def _formula_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--formula", help="formula text, or a path to a file holding it")
    src.add_argument("--builtin", choices=BUILTIN_NAMES)
    p.add_argument("--free", action="append", default=[], metavar="VAR:SORT",
                   help="declare a free variable (sort point, open or set)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="topocount", description="Count and analyze finite topologies.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="stream labeled structures")
    p.add_argument("--kind", required=True, choices=[k.value for k in StructureKind])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--emit", action="store_true", help="print every structure")
    _common(p)

    p = sub.add_parser("count", help="count topologies satisfying a sentence")
    _formula_source(p)
    p.add_argument("--r", type=int, default=0, help="number of constants a1..ar")
    p.add_argument("--mode", choices=["hard-wired", "free"], default="hard-wired")
    p.add_argument("--n", required=True, type=_n_range, help="N or A..B")
    p.add_argument("--moduli", type=_int_list, default=[])
    p.add_argument("--jobs", type=int)
    p.add_argument("--cache", help="JSONL result cache")
    _common(p)

    p = sub.add_parser("eval", help="evaluate a formula on one structure")
    _formula_source(p)
    p.add_argument("--r", type=int, help="constants hard-wired to points 1..r")
    p.add_argument("--structure", required=True, help="structure JSON file")
    p.add_argument("--bind", action="append", default=[], metavar="VAR=VALUE",
                   help="point '2' or set '{1,3}' (1-based)")
    _common(p)

    p = sub.add_parser("translate", help="apply Phi# or Psi#")
    p.add_argument("--direction", required=True, choices=["phi", "psi"])
    _formula_source(p)
    _common(p)

    p = sub.add_parser("analyze", help="MC-finiteness evidence for a sequence")
    p.add_argument("--seq", required=True, help="JSON {offset, values} or one value per line")
    p.add_argument("--moduli", type=_int_list, default=[2, 3, 4, 5])
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--chunks", type=_chunks, metavar="b,l")
    p.add_argument("--extend", type=int, default=0,
                   help="continue each found recurrence this many terms (conjectural)")
    _common(p)

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--n", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    return parser


# Input helpers.

def _read_formula_text(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def _declared_free(items: list[str]) -> dict[str, Sort]:
    out = {}
    for item in items:
        name, _, sort = item.partition(":")
        try:
            out[name.strip()] = Sort(sort.strip())
        except ValueError:
            raise UsageError(f"--free expects VAR:SORT with SORT in point/open/set, got {item!r}")
    return out


def _resolve_formula(args, dialect: Dialect, r: int | None, free: dict[str, Sort]):
    """Returns (formula, free sorts)."""
    if args.builtin:
        try:
            _, sorts = builtin_text(args.builtin, r if r else None)
            return builtin(args.builtin, r if r else None), sorts
        except ValueError as exc:
            raise UsageError(str(exc))
    return parse_formula(_read_formula_text(args.formula), dialect, free=free), free


def _read_sequence(path: str) -> SequenceRecord:
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return SequenceRecord.from_json(json.loads(text), label=os.path.basename(path))
    values = [int(line.split("#", 1)[0]) for line in text.splitlines()
              if line.split("#", 1)[0].strip()]
    return SequenceRecord(os.path.basename(path), 0, values)


# Output helpers.

def _emit_rows(rows: list[dict], columns: list[str], out) -> None:
    w = csv.DictWriter(out, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


# Commands.

def _config(args) -> Config:
    cfg = load_config(args.config)
    return cfg.updated(
        format=args.format,
        enum_cap=args.enum_cap,
        fol_cap=args.fol_cap,
        mso_cap=args.mso_cap,
        jobs=getattr(args, "jobs", None),
        cache=getattr(args, "cache", None),
    )


def cmd_enumerate(args, cfg: Config, out) -> int:
    structures = enumerate_structures(args.kind, args.n, cap=cfg.enum_cap)
    total = 0
    rows = []
    for s in structures:
        total += 1
        if args.emit:
            if cfg.format == "json":
                print(_dump(s.to_json()), file=out)
            elif cfg.format == "plain":
                print(s if isinstance(s, Topology) else _dump(s.to_json()["below"]), file=out)
            else:
                rows.append({"index": total - 1, "structure": _dump(s.to_json())})
    summary = {"kind": args.kind, "n": args.n, "count": str(total)}
    if cfg.format == "json":
        print(_dump(summary), file=out)
    elif cfg.format == "plain":
        print(f"{args.kind} n={args.n}: {total}", file=out)
    elif args.emit:
        _emit_rows(rows, ["index", "structure"], out)
    else:
        _emit_rows([summary], ["kind", "n", "count"], out)
    return 0


def cmd_count(args, cfg: Config, out) -> int:
    f, free = _resolve_formula(args, Dialect.TCMSOL, args.r, _declared_free(args.free))
    if free:
        raise UsageError("count needs a sentence; the formula has free variables")
    cache = ResultCache(cfg.cache) if cfg.cache else None
    results = []
    for n in args.n:
        q = CountQuery(f, args.r, n, tuple(args.moduli), args.mode)
        results.append(count_topologies(q, jobs=cfg.jobs, cache=cache, enum_cap=cfg.enum_cap,
                                        fol_cap=cfg.fol_cap, mso_cap=cfg.mso_cap))
    if cfg.format == "json":
        for res in results:
            print(_dump(res.to_json()), file=out)
    elif cfg.format == "plain":
        for res in results:
            mods = " ".join(f"mod{m}={v}" for m, v in sorted(res.residues.items()))
            print(f"n={res.query.n} count={res.count}" + (f" {mods}" if mods else ""), file=out)
    else:
        columns = ["n", "count"] + [f"mod_{m}" for m in args.moduli]
        rows = [{"n": r.query.n, "count": r.count, **{f"mod_{m}": v for m, v in r.residues.items()}}
                for r in results]
        _emit_rows(rows, columns, out)
    return 0


def cmd_eval(args, cfg: Config, out) -> int:
    structure = load_structure(args.structure)
    is_top = isinstance(structure, Topology)
    declared = _declared_free(args.free)
    raw = {}
    for item in args.bind:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--bind expects VAR=VALUE, got {item!r}")
        name = name.strip()
        raw[name] = value
        if name not in declared and not args.builtin:
            braces = value.strip().startswith("{")
            declared[name] = (Sort.OPEN if is_top else Sort.SET) if braces else Sort.POINT
    dialect = Dialect.TCMSOL if is_top else Dialect.CMSOL
    if args.builtin and not is_top:
        raise UsageError("builtins are topological; use a topology structure")
    f, free = _resolve_formula(args, dialect, args.r, declared)
    r = args.r if args.r is not None else max_constant(f)
    bindings = {}
    for name, value in raw.items():
        if name not in free:
            raise UsageError(f"{name} is not a free variable of the formula")
        try:
            bindings[name] = parse_binding(name, value, free[name])
        except ValueError:
            raise UsageError(f"cannot parse binding {name}={value}")
    cf = CompiledFormula(f, fol_cap=cfg.fol_cap, mso_cap=cfg.mso_cap)
    value = cf.evaluate(structure, Environment(bindings, tuple(range(r))))
    if cfg.format == "csv":
        _emit_rows([{"value": str(value).lower()}], ["value"], out)
    else:
        print("true" if value else "false", file=out)
    return 0


def cmd_translate(args, cfg: Config, out) -> int:
    source = Dialect.CMSOL if args.direction == "phi" else Dialect.TCMSOL
    if args.builtin and args.direction == "phi":
        raise UsageError("builtins are TCMSOL; phi translates CMSOL formulas")
    f, free = _resolve_formula(args, source, None, _declared_free(args.free))
    image = phi_sharp(f, free) if args.direction == "phi" else psi_sharp(f, free)
    rec = {"direction": args.direction, "input": render_formula(f), "output": render_formula(image)}
    if cfg.format == "json":
        print(_dump(rec), file=out)
    elif cfg.format == "plain":
        print(rec["output"], file=out)
    else:
        _emit_rows([rec], ["direction", "input", "output"], out)
    return 0


def cmd_analyze(args, cfg: Config, out) -> int:
    record = _read_sequence(args.seq)
    if not record.values:
        raise UsageError(f"{args.seq} holds no values")
    if any(m < 2 for m in args.moduli):
        raise UsageError("moduli must be >= 2")
    if args.max_order < 1:
        raise UsageError("--max-order must be >= 1")
    if args.extend < 0:
        raise UsageError("--extend must be non-negative")
    report = mc_report(record, args.moduli, args.max_order, args.extend)
    if args.chunks:
        b, length = args.chunks
        report["chunks"] = chunk_frequencies(reduce_mod(record.values, b), b, length).to_json()
    if cfg.format == "json":
        print(_dump(report), file=out)
        return 0
    rows = []
    for e in report["moduli"]:
        per, rec = e["period"] or {}, e["recurrence"] or {}
        rows.append({
            "modulus": e["modulus"], "preperiod": per.get("preperiod", ""),
            "period": per.get("period", ""), "confidence": per.get("confidence", ""),
            "order": rec.get("order", ""), "offset": rec.get("offset", ""),
            "coefficients": " ".join(map(str, rec.get("coefficients", []))),
            "verdict": e["verdict"],
        })
    if cfg.format == "csv":
        _emit_rows(rows, list(rows[0]) if rows else ["modulus"], out)
    else:
        print(f"{report['label']}: {report['terms']} terms from offset {report['offset']}", file=out)
        for row in rows:
            period = f"period {row['period']} after {row['preperiod']}" if row["period"] != "" else "no period"
            rec = f"order {row['order']} from {row['offset']}" if row["order"] != "" else "no recurrence"
            print(f"  mod {row['modulus']}: {period}; {rec}; {row['verdict']}", file=out)
        print(f"  over Q: {report['integer']['status']}", file=out)
    return 0


def cmd_verify(args, cfg: Config, out) -> int:
    n = args.n if args.n is not None else DEFAULT_SUITE_N[args.suite]
    if n < 0:
        raise UsageError("--n must be non-negative")
    result = run_suite(args.suite, n, jobs=cfg.jobs, samples=args.samples, seed=args.seed)
    if cfg.format == "json":
        print(_dump(result), file=out)
    elif cfg.format == "plain":
        print(f"{args.suite} n={n}: {'pass' if result['passed'] else 'FAIL'}", file=out)
    else:
        _emit_rows([{"suite": args.suite, "n": n, "passed": result["passed"]}],
                   ["suite", "n", "passed"], out)
    return 0 if result["passed"] else 1


COMMANDS = {
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "eval": cmd_eval,
    "translate": cmd_translate,
    "analyze": cmd_analyze,
    "verify": cmd_verify,
}

USAGE_ERRORS = (
    UsageError, ConfigError, CountError, StructureError, FormulaSyntaxError,
    EvaluationError, TranslationError, OSError, json.JSONDecodeError, ValueError,
)


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, out)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=err)
        return 2
    except SystemExit as exc:
        # --help exits 0 through argparse
        return int(exc.code or 0)


def run_captured(argv: list[str]) -> tuple[int, str, str]:
    """Run the CLI in-process and return (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def main() -> None:
    sys.exit(run())
