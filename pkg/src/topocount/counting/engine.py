"""Counting topologies on [r+n] that satisfy a TCMSOL sentence.

Topologies are streamed from the preorder enumeration and folded into a
big-integer accumulator; nothing is stored.  With ``jobs > 1`` the stream
is split into round-robin shards evaluated in worker processes, and the
per-shard counts are summed, so the result does not depend on ``jobs``.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..evaluator import CompiledFormula, Environment, FOL_CAP, MSO_CAP
from ..logic.ast import Dialect, Formula, free_vars, max_constant
from ..logic.check import ConstantMode, ConstantTable, check_well_sorted
from ..logic.syntax import render_formula
from ..structures import (
    DEFAULT_ENUMERATION_CAP, CapExceeded, StructureKind, enumerate_structures,
)
from .classical import stirling2


class CountError(ValueError):
    pass


@dataclass(frozen=True)
class CountQuery:
    formula: Formula
    r: int = 0
    n: int = 0
    moduli: tuple[int, ...] = ()
    mode: ConstantMode = ConstantMode.HARD_WIRED

    def __post_init__(self):
        object.__setattr__(self, "mode", ConstantMode(self.mode))
        object.__setattr__(self, "moduli", tuple(self.moduli))
        if self.r < 0 or self.n < 0:
            raise CountError("r and n must be non-negative")
        if any(m < 2 for m in self.moduli):
            raise CountError("moduli must be >= 2")

    @property
    def size(self) -> int:
        return self.r + self.n


@dataclass(frozen=True)
class CountResult:
    query: CountQuery
    count: int
    residues: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "formula": render_formula(self.query.formula),
            "r": self.query.r,
            "mode": self.query.mode.value,
            "n": self.query.n,
            "count": str(self.count),
            "mod": {str(m): v for m, v in sorted(self.residues.items())},
        }


@dataclass
class SequenceRecord:
    """Values s(offset), s(offset + 1), ... with optional residue tracks."""

    label: str
    offset: int
    values: list[int]
    residues: dict[int, list[int]] = field(default_factory=dict)

    def __post_init__(self):
        for m, track in self.residues.items():
            if len(track) != len(self.values) or any(
                v % m != res for v, res in zip(self.values, track)
            ):
                raise ValueError(f"residue track mod {m} disagrees with values")

    @classmethod
    def with_moduli(cls, label: str, offset: int, values: Sequence[int], moduli: Iterable[int] = ()):
        values = list(values)
        return cls(label, offset, values, {m: [v % m for v in values] for m in moduli})

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "offset": self.offset,
            "values": [str(v) for v in self.values],
            "mod": {str(m): t for m, t in sorted(self.residues.items())},
        }

    @classmethod
    def from_json(cls, obj: dict, label: str = "") -> "SequenceRecord":
        values = [int(v) for v in obj["values"]]
        residues = {int(m): list(t) for m, t in obj.get("mod", {}).items()}
        return cls(obj.get("label", label), int(obj.get("offset", 0)), values, residues)


def formula_key(f: Formula) -> str:
    return hashlib.sha256(render_formula(f).encode()).hexdigest()


class ResultCache:
    """Line-oriented JSON cache of exact counts, loaded on first use."""

    def __init__(self, path: str):
        self.path = path
        self._data: dict[tuple, int] | None = None

    @staticmethod
    def _key(q: CountQuery) -> tuple:
        return (formula_key(q.formula), q.r, q.mode.value, q.n)

    def _load(self) -> dict:
        if self._data is None:
            self._data = {}
            if os.path.exists(self.path):
                with open(self.path) as fh:
                    for line in fh:
                        line = line.strip()
                        if not line:
                            continue
                        e = json.loads(line)
                        self._data[(e["formula"], e["r"], e["mode"], e["n"])] = int(e["count"])
        return self._data

    def get(self, q: CountQuery) -> int | None:
        return self._load().get(self._key(q))

    def put(self, q: CountQuery, count: int) -> None:
        data = self._load()
        key = self._key(q)
        if key in data:
            return
        data[key] = count
        f, r, mode, n = key
        with open(self.path, "a") as fh:
            fh.write(json.dumps({"formula": f, "r": r, "mode": mode, "n": n, "count": str(count)}) + "\n")


def _validate(q: CountQuery, enum_cap: int, fol_cap: int, mso_cap: int) -> None:
    f = q.formula
    if free_vars(f):
        names = ", ".join(sorted(v.name for v in free_vars(f)))
        raise CountError(f"formula has free variables: {names}")
    if max_constant(f) > q.r:
        raise CountError(f"formula uses a{max_constant(f)} but r={q.r}")
    diags = check_well_sorted(f, Dialect.TCMSOL, ConstantTable(q.r, q.mode))
    if diags:
        raise CountError(f"formula is not well-sorted TCMSOL: {diags[0]}")
    if q.size > enum_cap:
        raise CapExceeded(f"r+n={q.size} exceeds enumeration cap {enum_cap}")


def _count_shard(f: Formula, r: int, size: int, mode: str, shard: tuple[int, int],
                 enum_cap: int, fol_cap: int, mso_cap: int) -> int:
    cf = CompiledFormula(f, fol_cap=fol_cap, mso_cap=mso_cap)
    if ConstantMode(mode) is ConstantMode.HARD_WIRED:
        envs = [Environment((), tuple(range(r)))]
    else:
        envs = [Environment((), c) for c in itertools.product(range(size), repeat=r)]
    total = 0
    for t in enumerate_structures(StructureKind.TOPOLOGY, size, cap=enum_cap, shard=shard):
        for env in envs:
            if cf.evaluate(t, env):
                total += 1
    return total


def count_topologies(
    q: CountQuery,
    jobs: int = 1,
    cache: ResultCache | None = None,
    enum_cap: int = DEFAULT_ENUMERATION_CAP,
    fol_cap: int = FOL_CAP,
    mso_cap: int = MSO_CAP,
) -> CountResult:
    """T_{phi,r}(n): topologies on [r+n] satisfying the sentence.

    In hard-wired mode a_i is the point i; in free mode every interpretation
    of the constants in [r+n] (repetitions allowed) is counted separately.
    """
    if jobs < 1:
        raise CountError("jobs must be >= 1")
    _validate(q, enum_cap, fol_cap, mso_cap)
    count = cache.get(q) if cache is not None else None
    if count is None:
        args = (q.formula, q.r, q.size, q.mode.value)
        caps = (enum_cap, fol_cap, mso_cap)
        if jobs == 1:
            count = _count_shard(*args, (0, 1), *caps)
        else:
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
                futures = [pool.submit(_count_shard, *args, (i, jobs), *caps) for i in range(jobs)]
                count = sum(fut.result() for fut in futures)
        if cache is not None:
            cache.put(q, count)
    return CountResult(q, count, {m: count % m for m in q.moduli})


def count_sequence(
    formula: Formula,
    n_range: Iterable[int],
    r: int = 0,
    moduli: Sequence[int] = (),
    mode: ConstantMode | str = ConstantMode.HARD_WIRED,
    label: str | None = None,
    **kwargs,
) -> SequenceRecord:
    ns = list(n_range)
    if not ns or ns != list(range(ns[0], ns[0] + len(ns))):
        raise CountError("n_range must be a non-empty run of consecutive sizes")
    values = [
        count_topologies(CountQuery(formula, r, n, tuple(moduli), mode), **kwargs).count
        for n in ns
    ]
    label = label or f"T[{render_formula(formula)}; r={r}]"
    return SequenceRecord.with_moduli(label, ns[0] if ns else 0, values, moduli)


def verify_stirling_identity(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> dict:
    """Q(n) against sum_k S(n,k) P(k), both sides from enumeration."""
    lhs = sum(1 for _ in enumerate_structures(StructureKind.PREORDER, n, cap=cap))
    terms = [
        stirling2(n, k) * sum(1 for _ in enumerate_structures(StructureKind.POSET, k, cap=cap))
        for k in range(n + 1)
    ]
    rhs = sum(terms)
    return {"n": n, "lhs": lhs, "rhs": rhs, "terms": terms, "equal": lhs == rhs}
