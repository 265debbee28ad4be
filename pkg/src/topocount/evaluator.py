"""Brute-force model checking on finite topologies and preorders.

Formulas are compiled once into nested closures; a compiled formula can
then be evaluated on many structures.  Within one evaluation, quantifier
nodes that do not depend on every enclosing bound variable are memoized
on the values of their free variables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .logic.ast import (
    And, Const, CountMod, Exists, Forall, Formula, Iff, Implies, Leq,
    MemberOpen, MemberSet, Not, Or, PointEq, SetEq, Sort, Var, free_vars,
    max_constant, subformulas, uses_sort_quantifier,
)
from .structures import Preorder, Topology, full_mask, minimal_basis

FOL_CAP = 10
MSO_CAP = 6

_MISSING = object()
_node_ids = itertools.count()


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class Environment:
    """Variable bindings plus the interpretation of constants a1, a2, ....

    Points are 0-indexed; open-set and point-set values are bit-masks.
    """

    bindings: Mapping[str, int] = field(default_factory=dict)
    constants: tuple[int, ...] = ()

    @classmethod
    def hard_wired(cls, r: int, **bindings: int) -> "Environment":
        return cls(dict(bindings), tuple(range(r)))

    def bind(self, **values: int) -> "Environment":
        return Environment({**self.bindings, **values}, self.constants)


class _Ctx:
    __slots__ = ("n", "points", "opens", "subsets", "below", "consts", "memo")

    def __init__(self, n, opens, below, consts):
        self.n = n
        self.points = range(n)
        self.opens = opens
        self.subsets = range(1 << n)
        self.below = below
        self.consts = consts
        self.memo = {}


Compiled = Callable[[_Ctx, dict], bool]


def _term(t) -> Callable[[_Ctx, dict], int]:
    if isinstance(t, Const):
        i = t.index - 1
        return lambda c, e: c.consts[i]
    name = t.name
    return lambda c, e: e[name]


def _domain(sort: Sort):
    if sort is Sort.POINT:
        return lambda c: c.points
    if sort is Sort.OPEN:
        return lambda c: c.opens
    return lambda c: c.subsets


def _compile(f: Formula, scope: tuple[str, ...]) -> Compiled:
    if isinstance(f, PointEq):
        a, b = _term(f.left), _term(f.right)
        return lambda c, e: a(c, e) == b(c, e)
    if isinstance(f, SetEq):
        u, v = f.left.name, f.right.name
        return lambda c, e: e[u] == e[v]
    if isinstance(f, (MemberOpen, MemberSet)):
        x, u = _term(f.point), f.set.name
        return lambda c, e: bool(e[u] >> x(c, e) & 1)
    if isinstance(f, Leq):
        x, y = _term(f.left), _term(f.right)
        return lambda c, e: bool(c.below[y(c, e)] >> x(c, e) & 1)
    if isinstance(f, Not):
        g = _compile(f.body, scope)
        return lambda c, e: not g(c, e)
    if isinstance(f, And):
        l, r = _compile(f.left, scope), _compile(f.right, scope)
        return lambda c, e: l(c, e) and r(c, e)
    if isinstance(f, Or):
        l, r = _compile(f.left, scope), _compile(f.right, scope)
        return lambda c, e: l(c, e) or r(c, e)
    if isinstance(f, Implies):
        l, r = _compile(f.left, scope), _compile(f.right, scope)
        return lambda c, e: (not l(c, e)) or r(c, e)
    if isinstance(f, Iff):
        l, r = _compile(f.left, scope), _compile(f.right, scope)
        return lambda c, e: l(c, e) == r(c, e)
    if isinstance(f, (Forall, Exists, CountMod)):
        return _compile_quantifier(f, scope)
    raise TypeError(f"not a formula: {f!r}")


def _compile_quantifier(f, scope: tuple[str, ...]) -> Compiled:
    name = f.var.name
    body = _compile(f.body, scope + (name,))
    dom = _domain(f.var.sort)

    if isinstance(f, CountMod):
        m, a = f.modulus, f.residue

        def run(c, e):
            old = e.get(name, _MISSING)
            try:
                k = 0
                for v in c.points:
                    e[name] = v
                    if body(c, e):
                        k += 1
                return k % m == a
            finally:
                _restore(e, name, old)
    else:
        want = isinstance(f, Exists)

        def run(c, e):
            old = e.get(name, _MISSING)
            try:
                for v in dom(c):
                    e[name] = v
                    if body(c, e) is want:
                        return want
                return not want
            finally:
                _restore(e, name, old)

    relevant = tuple(sorted({v.name for v in free_vars(f)}))
    if len(set(scope)) <= len(relevant):
        return run
    key0 = next(_node_ids)

    def memoized(c, e):
        key = (key0,) + tuple(e[v] for v in relevant)
        hit = c.memo.get(key)
        if hit is None:
            hit = c.memo[key] = run(c, e)
        return hit

    return memoized


def _restore(e: dict, name: str, old) -> None:
    if old is _MISSING:
        e.pop(name, None)
    else:
        e[name] = old


def _body_bool(g: Compiled) -> Compiled:
    return lambda c, e: bool(g(c, e))


class CompiledFormula:
    """A formula prepared for repeated evaluation."""

    def __init__(self, f: Formula, fol_cap: int = FOL_CAP, mso_cap: int = MSO_CAP):
        self.formula = f
        self._root = _body_bool(_compile(f, ()))
        self.free = {v.name: v.sort for v in free_vars(f)}
        self.r = max_constant(f)
        self.has_open = any(isinstance(g, MemberOpen) or (
            isinstance(g, (Forall, Exists)) and g.var.sort is Sort.OPEN)
            for g in subformulas(f))
        self.has_leq = any(isinstance(g, Leq) for g in subformulas(f))
        self.cap = mso_cap if uses_sort_quantifier(f, Sort.SET) else fol_cap

    def _context(self, structure, env: Environment, open_range=None) -> tuple[_Ctx, dict]:
        n = structure.n
        if n > self.cap:
            raise EvaluationError(f"n={n} exceeds evaluation cap {self.cap}")
        if isinstance(structure, Topology):
            if self.has_leq:
                raise EvaluationError("'<=' atom cannot be evaluated on a topology")
            opens = structure.opens if open_range is None else tuple(open_range)
            below = None
        elif isinstance(structure, Preorder):
            if self.has_open:
                raise EvaluationError("open-set constructs cannot be evaluated on a preorder")
            opens, below = (), structure.below
        else:
            raise TypeError(f"not a structure: {structure!r}")
        consts = env.constants
        if len(consts) < self.r:
            raise EvaluationError(f"formula uses a{self.r} but only {len(consts)} constants are bound")
        if any(not 0 <= p < n for p in consts[: self.r]):
            raise EvaluationError("constant interpreted outside the ground set")
        bindings = dict(env.bindings)
        full = full_mask(n)
        for name, sort in self.free.items():
            if name not in bindings:
                raise EvaluationError(f"free variable {name} is unbound")
            v = bindings[name]
            if sort is Sort.POINT and not 0 <= v < n:
                raise EvaluationError(f"{name}={v + 1} outside the ground set")
            if sort is not Sort.POINT and (v < 0 or v & ~full):
                raise EvaluationError(f"{name} is not a subset of the ground set")
            if sort is Sort.OPEN and isinstance(structure, Topology) and not structure.is_open(v):
                raise EvaluationError(f"{name} is bound to a set that is not open")
        return _Ctx(n, opens, below, consts), bindings

    def evaluate(self, structure, env: Environment | None = None, open_range=None) -> bool:
        env = env if env is not None else Environment.hard_wired(self.r)
        ctx, bindings = self._context(structure, env, open_range)
        return self._root(ctx, bindings)

    def count_points(self, structure, var: str, env: Environment | None = None) -> int:
        env = env if env is not None else Environment.hard_wired(self.r)
        if self.free.get(var) is not Sort.POINT:
            raise EvaluationError(f"{var} is not a free point variable")
        k = 0
        for x in range(structure.n):
            if self.evaluate(structure, env.bind(**{var: x})):
                k += 1
        return k


def evaluate(structure, f: Formula, env: Environment | None = None, **caps) -> bool:
    """Truth value of ``f`` in ``structure`` under ``env``.

    Open-set quantifiers range over the opens of a topology, point-set
    quantifiers over all subsets, point quantifiers over the ground set.
    Without an explicit environment, the constants are hard-wired.
    """
    return CompiledFormula(f, **caps).evaluate(structure, env)


def count_points_satisfying(structure, f: Formula, var: str, env: Environment | None = None) -> int:
    return CompiledFormula(f).count_points(structure, var, env)


def check_basis_invariance(t: Topology, f: Formula, env: Environment | None = None) -> bool:
    """Whether ``f`` has the same value with open quantifiers over the opens
    and over the minimal basis of ``t``.  ``f`` must be first-order."""
    if uses_sort_quantifier(f, Sort.SET) or any(
        isinstance(g, (CountMod, Leq)) for g in subformulas(f)
    ):
        raise EvaluationError("basis invariance is only defined for TFOL formulas")
    cf = CompiledFormula(f)
    return cf.evaluate(t, env) == cf.evaluate(t, env, open_range=minimal_basis(t))


def parse_binding(name: str, text: str, sort: Sort) -> int:
    """Parse an external (1-based) binding: ``2`` for points, ``{1,3}`` for sets."""
    text = text.strip()
    if sort is Sort.POINT:
        return int(text) - 1
    inner = text.strip("{}").strip()
    mask = 0
    if inner:
        for part in inner.split(","):
            mask |= 1 << (int(part) - 1)
    return mask


def all_constant_tuples(r: int, n: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(n), repeat=r)
