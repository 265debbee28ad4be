"""AST for TCMSOL / CMSOL formulas.

Variables carry their sort at every occurrence.  Scoping is by name: a
binder shadows any outer variable of the same name regardless of sort.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union


class Sort(str, enum.Enum):
    POINT = "point"
    OPEN = "open"
    SET = "set"


class Dialect(str, enum.Enum):
    TCMSOL = "TCMSOL"
    CMSOL = "CMSOL"
    TFOL = "TFOL"
    FOL = "FOL"


@dataclass(frozen=True)
class Var:
    name: str
    sort: Sort = Sort.POINT


@dataclass(frozen=True)
class Const:
    """Constant symbol a_index (1-based)."""

    index: int


Term = Union[Var, Const]


@dataclass(frozen=True)
class PointEq:
    left: Term
    right: Term


@dataclass(frozen=True)
class SetEq:
    left: Var
    right: Var


@dataclass(frozen=True)
class MemberOpen:
    point: Term
    set: Var


@dataclass(frozen=True)
class MemberSet:
    point: Term
    set: Var


@dataclass(frozen=True)
class Leq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class CountMod:
    """True iff the number of points satisfying ``body`` is ``residue`` mod ``modulus``."""

    modulus: int
    residue: int
    var: Var
    body: "Formula"


Atom = Union[PointEq, SetEq, MemberOpen, MemberSet, Leq]
Formula = Union[Atom, Not, And, Or, Implies, Iff, Forall, Exists, CountMod]

ATOMS = (PointEq, SetEq, MemberOpen, MemberSet, Leq)
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Forall, Exists)


def conj(*parts: Formula) -> Formula:
    if not parts:
        raise ValueError("empty conjunction")
    f = parts[-1]
    for p in reversed(parts[:-1]):
        f = And(p, f)
    return f


def disj(*parts: Formula) -> Formula:
    if not parts:
        raise ValueError("empty disjunction")
    f = parts[-1]
    for p in reversed(parts[:-1]):
        f = Or(p, f)
    return f


def atom_terms(f: Atom) -> tuple:
    if isinstance(f, (PointEq, Leq)):
        return (f.left, f.right)
    if isinstance(f, SetEq):
        return (f.left, f.right)
    return (f.point, f.set)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (Forall, Exists, CountMod)):
        yield from subformulas(f.body)


def free_vars(f: Formula) -> frozenset[Var]:
    if isinstance(f, ATOMS):
        return frozenset(t for t in atom_terms(f) if isinstance(t, Var))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    bound = f.var.name
    return frozenset(v for v in free_vars(f.body) if v.name != bound)


def var_names(f: Formula) -> set[str]:
    names = set()
    for g in subformulas(f):
        if isinstance(g, ATOMS):
            names.update(t.name for t in atom_terms(g) if isinstance(t, Var))
        elif isinstance(g, (Forall, Exists, CountMod)):
            names.add(g.var.name)
    return names


def max_constant(f: Formula) -> int:
    best = 0
    for g in subformulas(f):
        if isinstance(g, ATOMS):
            for t in atom_terms(g):
                if isinstance(t, Const):
                    best = max(best, t.index)
    return best


def uses_sort_quantifier(f: Formula, sort: Sort) -> bool:
    return any(
        isinstance(g, QUANTIFIERS) and g.var.sort is sort for g in subformulas(f)
    )


class FreshNames:
    """Supplies variable names not occurring in a set of reserved names."""

    def __init__(self, reserved: set[str], stem: str):
        self.reserved = set(reserved)
        self.stem = stem
        self.counter = 0

    def __call__(self) -> str:
        while True:
            self.counter += 1
            name = f"{self.stem}{self.counter}"
            if name not in self.reserved:
                self.reserved.add(name)
                return name
