"""Translation schemes between topologies and quasi-orders.

``phi_sharp`` compiles a CMSOL formula about ``<=`` into a TCMSOL formula
about the opens; ``psi_sharp`` goes the other way, turning open-set
variables into point-set variables guarded by "is a down-set".  The
structure maps are the Alexandroff maps.
"""
from __future__ import annotations

from dataclasses import dataclass

from .logic.ast import (
    And, CountMod, Dialect, Exists, Forall, Formula, FreshNames, Iff, Implies,
    Leq, MemberOpen, MemberSet, Not, Or, PointEq, SetEq, Sort, Var, free_vars,
    max_constant, var_names,
)
from .logic.check import ConstantTable, check_well_sorted
from .structures import Preorder, Topology, alpha, alpha_prime


class TranslationError(ValueError):
    pass


def phi_star(t: Topology) -> Preorder:
    return alpha(t)


def psi_star(q: Preorder) -> Topology:
    return alpha_prime(q)


def phi_leq(x, y, u: str) -> Formula:
    """x <= y as 'every open containing y contains x'."""
    U = Var(u, Sort.OPEN)
    return Forall(U, Implies(MemberOpen(y, U), MemberOpen(x, U)))


def psi_open(u: str, x: str, y: str) -> Formula:
    """U is a union of basic sets, i.e. a down-set of <=."""
    U, X, Y = Var(u, Sort.SET), Var(x), Var(y)
    return Forall(X, Forall(Y, Implies(And(MemberSet(Y, U), Leq(X, Y)), MemberSet(X, U))))


def psi_basic(x, u: str, y: str) -> Formula:
    """U is the basic set of x: exactly the points below x."""
    U, Y = Var(u, Sort.SET), Var(y)
    return Forall(Y, Iff(MemberSet(Y, U), Leq(Y, x)))


@dataclass(frozen=True)
class TranslationScheme:
    """The component formulas of one of the two schemes, for display."""

    name: str
    components: dict

    @classmethod
    def phi(cls) -> "TranslationScheme":
        x, y = Var("x"), Var("y")
        return cls("Phi", {"universe": PointEq(x, x), "leq": phi_leq(x, y, "U")})

    @classmethod
    def psi(cls) -> "TranslationScheme":
        x = Var("x")
        return cls("Psi", {
            "universe": PointEq(x, x),
            "basic": psi_basic(x, "U", "y"),
            "open": psi_open("U", "x", "y"),
        })


def _ensure(f: Formula, dialect: Dialect, free: dict | None) -> None:
    r = max_constant(f)
    diags = check_well_sorted(f, dialect, ConstantTable(r), free)
    if diags:
        raise TranslationError(f"input is not {dialect.value}: {diags[0]}")


def phi_sharp(f: Formula, free: dict[str, Sort] | None = None) -> Formula:
    """Replace every ``x <= y`` by its definition over the opens."""
    _ensure(f, Dialect.CMSOL, free)
    fresh = FreshNames(var_names(f), "W")

    def tr(g: Formula) -> Formula:
        if isinstance(g, Leq):
            return phi_leq(g.left, g.right, fresh())
        if isinstance(g, (PointEq, SetEq, MemberSet, MemberOpen)):
            return g
        if isinstance(g, Not):
            return Not(tr(g.body))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(tr(g.left), tr(g.right))
        if isinstance(g, (Forall, Exists)):
            return type(g)(g.var, tr(g.body))
        if isinstance(g, CountMod):
            return CountMod(g.modulus, g.residue, g.var, tr(g.body))
        raise TypeError(f"not a formula: {g!r}")

    return tr(f)


def psi_sharp(f: Formula, free: dict[str, Sort] | None = None) -> Formula:
    """Turn open-set variables into guarded point-set variables.

    Bound open variables are guarded at their binder; a free open variable
    is guarded at each atom in which it occurs.
    """
    _ensure(f, Dialect.TCMSOL, free)
    fresh = FreshNames(var_names(f), "z")

    def guard(u: str) -> Formula:
        return psi_open(u, fresh(), fresh())

    def as_set(v: Var) -> Var:
        return Var(v.name, Sort.SET) if v.sort is Sort.OPEN else v

    def tr(g: Formula, free_open: frozenset[str]) -> Formula:
        if isinstance(g, MemberOpen):
            atom = MemberSet(g.point, as_set(g.set))
            if g.set.name in free_open:
                return And(guard(g.set.name), atom)
            return atom
        if isinstance(g, SetEq):
            atom = SetEq(as_set(g.left), as_set(g.right))
            guards = [guard(v.name) for v in (g.left, g.right)
                      if v.sort is Sort.OPEN and v.name in free_open]
            for gd in reversed(guards):
                atom = And(gd, atom)
            return atom
        if isinstance(g, (PointEq, MemberSet, Leq)):
            return g
        if isinstance(g, Not):
            return Not(tr(g.body, free_open))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(tr(g.left, free_open), tr(g.right, free_open))
        if isinstance(g, (Forall, Exists)):
            inner = free_open - {g.var.name}
            body = tr(g.body, inner)
            if g.var.sort is not Sort.OPEN:
                return type(g)(g.var, body)
            u = as_set(g.var)
            if isinstance(g, Exists):
                return Exists(u, And(guard(u.name), body))
            return Forall(u, Implies(guard(u.name), body))
        if isinstance(g, CountMod):
            return CountMod(g.modulus, g.residue, g.var, tr(g.body, free_open - {g.var.name}))
        raise TypeError(f"not a formula: {g!r}")

    free_open = frozenset(v.name for v in free_vars(f) if v.sort is Sort.OPEN)
    return tr(f, free_open)
