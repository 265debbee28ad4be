"""Slow reference implementations and hypothesis strategies used by the tests."""
from __future__ import annotations

from hypothesis import strategies as st

from topocount.logic.ast import (
    And, Const, CountMod, Exists, Forall, Iff, Implies, Leq, MemberOpen,
    MemberSet, Not, Or, PointEq, SetEq, Sort, Var,
)
from topocount.structures import Preorder, Topology


def naive_eval(structure, f, env: dict, consts=()) -> bool:
    """Direct recursive truth definition; no compilation, no memo."""
    n = structure.n

    def val(t):
        return consts[t.index - 1] if isinstance(t, Const) else env[t.name]

    def domain(sort):
        if sort is Sort.POINT:
            return range(n)
        if sort is Sort.OPEN:
            return structure.opens
        return range(1 << n)

    if isinstance(f, PointEq):
        return val(f.left) == val(f.right)
    if isinstance(f, SetEq):
        return env[f.left.name] == env[f.right.name]
    if isinstance(f, (MemberOpen, MemberSet)):
        return bool(env[f.set.name] >> val(f.point) & 1)
    if isinstance(f, Leq):
        return structure.leq(val(f.left), val(f.right))
    if isinstance(f, Not):
        return not naive_eval(structure, f.body, env, consts)
    if isinstance(f, And):
        return naive_eval(structure, f.left, env, consts) and naive_eval(structure, f.right, env, consts)
    if isinstance(f, Or):
        return naive_eval(structure, f.left, env, consts) or naive_eval(structure, f.right, env, consts)
    if isinstance(f, Implies):
        return (not naive_eval(structure, f.left, env, consts)) or naive_eval(structure, f.right, env, consts)
    if isinstance(f, Iff):
        return naive_eval(structure, f.left, env, consts) == naive_eval(structure, f.right, env, consts)
    if isinstance(f, (Forall, Exists)):
        results = (naive_eval(structure, f.body, {**env, f.var.name: v}, consts)
                   for v in domain(f.var.sort))
        return all(results) if isinstance(f, Forall) else any(results)
    if isinstance(f, CountMod):
        k = sum(naive_eval(structure, f.body, {**env, f.var.name: v}, consts) for v in range(n))
        return k % f.modulus == f.residue
    raise TypeError(f)


def components_oracle(t: Topology) -> list[int]:
    """Component label per point: classes of the symmetric-transitive closure of alpha."""
    from topocount.structures import alpha

    q = alpha(t)
    n = t.n
    adj = [[q.leq(x, y) or q.leq(y, x) for y in range(n)] for x in range(n)]
    label = list(range(n))
    changed = True
    while changed:
        changed = False
        for x in range(n):
            for y in range(n):
                if adj[x][y] and label[x] != label[y]:
                    m = min(label[x], label[y])
                    label[x] = label[y] = m
                    changed = True
    return label


def is_weakly_connected(q: Preorder) -> bool:
    n = q.n
    if n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in range(n):
            if y not in seen and (q.leq(x, y) or q.leq(y, x)):
                seen.add(y)
                stack.append(y)
    return len(seen) == n


POINT_NAMES = ("x", "y", "z")
OPEN_NAMES = ("U", "V")
SET_NAMES = ("S", "T")


def formulas(sorts=(Sort.POINT, Sort.OPEN, Sort.SET), leq=False, counting=True,
             r=0, max_depth=4, free=None):
    """Random well-sorted formulas over ``sorts``.

    ``free`` maps names to sorts that may occur unbound; bound variables
    are drawn from small fixed pools so shadowing happens too.
    """
    free = dict(free or {})

    @st.composite
    def build(draw, scope: tuple, depth: int):
        points = [Var(n, s) for n, s in scope if s is Sort.POINT] + [Const(i) for i in range(1, r + 1)]
        opens = [Var(n, s) for n, s in scope if s is Sort.OPEN]
        sets = [Var(n, s) for n, s in scope if s is Sort.SET]
        atoms = []
        if points:
            atoms.append(st.tuples(st.sampled_from(points), st.sampled_from(points)).map(lambda p: PointEq(*p)))
            if leq:
                atoms.append(st.tuples(st.sampled_from(points), st.sampled_from(points)).map(lambda p: Leq(*p)))
            if opens:
                atoms.append(st.tuples(st.sampled_from(points), st.sampled_from(opens)).map(lambda p: MemberOpen(*p)))
            if sets:
                atoms.append(st.tuples(st.sampled_from(points), st.sampled_from(sets)).map(lambda p: MemberSet(*p)))
        for pool in (opens, sets):
            if pool:
                atoms.append(st.tuples(st.sampled_from(pool), st.sampled_from(pool)).map(lambda p: SetEq(*p)))
        choices = ["atom"] if atoms else []
        if depth > 0:
            choices += ["not", "bin", "quant"] + (["count"] if counting else [])
        if not choices:
            choices = ["quant"]
        kind = draw(st.sampled_from(choices))
        if kind == "atom":
            return draw(st.one_of(atoms))
        if kind == "not":
            return Not(draw(build(scope, depth - 1)))
        if kind == "bin":
            op = draw(st.sampled_from([And, Or, Implies, Iff]))
            return op(draw(build(scope, depth - 1)), draw(build(scope, depth - 1)))
        if kind == "quant":
            sort = draw(st.sampled_from(list(sorts)))
            pool = {Sort.POINT: POINT_NAMES, Sort.OPEN: OPEN_NAMES, Sort.SET: SET_NAMES}[sort]
            name = draw(st.sampled_from(pool))
            inner = tuple((n, s) for n, s in scope if n != name) + ((name, sort),)
            q = draw(st.sampled_from([Forall, Exists]))
            return q(Var(name, sort), draw(build(inner, max(depth - 1, 0))))
        name = draw(st.sampled_from(POINT_NAMES))
        inner = tuple((n, s) for n, s in scope if n != name) + ((name, Sort.POINT),)
        m = draw(st.integers(1, 3))
        a = draw(st.integers(0, m - 1))
        return CountMod(m, a, Var(name, Sort.POINT), draw(build(inner, depth - 1)))

    return build(tuple(free.items()), max_depth)
