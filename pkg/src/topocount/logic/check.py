"""Well-sortedness and dialect checks on formula ASTs."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .ast import (
    ATOMS, BINARY, Const, CountMod, Dialect, Exists, Forall, Formula, Leq,
    MemberOpen, MemberSet, Not, PointEq, SetEq, Sort, Var,
)


class ConstantMode(str, enum.Enum):
    HARD_WIRED = "hard-wired"
    FREE = "free"


@dataclass(frozen=True)
class ConstantTable:
    r: int = 0
    mode: ConstantMode = ConstantMode.HARD_WIRED

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be non-negative")
        object.__setattr__(self, "mode", ConstantMode(self.mode))


_ALLOWS_OPEN = {Dialect.TCMSOL, Dialect.TFOL}
_ALLOWS_MSO = {Dialect.TCMSOL, Dialect.CMSOL}
_ALLOWS_LEQ = {Dialect.CMSOL, Dialect.FOL}


def check_well_sorted(
    f: Formula,
    dialect: Dialect | str,
    constants: ConstantTable | None = None,
    free: dict[str, Sort] | None = None,
) -> list[str]:
    """Diagnostics for ``f``; an empty list means well-sorted in ``dialect``.

    ``free`` declares the free variables allowed to occur unbound.
    """
    dialect = Dialect(dialect)
    constants = constants or ConstantTable()
    diags: list[str] = []

    def term(t, scope, where: str, want: Sort) -> None:
        if isinstance(t, Const):
            if want is not Sort.POINT:
                diags.append(f"constant a{t.index} used as a set in {where}")
            if not 1 <= t.index <= constants.r:
                diags.append(f"constant a{t.index} exceeds r={constants.r}")
            return
        if not isinstance(t, Var):
            diags.append(f"bad term {t!r} in {where}")
            return
        if t.sort is not want:
            diags.append(f"{t.name} has sort {t.sort.value}, expected {want.value} in {where}")
        bound = scope.get(t.name)
        if bound is None:
            diags.append(f"unbound variable {t.name}")
        elif bound is not t.sort:
            diags.append(f"{t.name} bound as {bound.value} but used as {t.sort.value}")
        sort_allowed(t.sort, where)

    def sort_allowed(sort: Sort, where: str) -> None:
        if sort is Sort.OPEN and dialect not in _ALLOWS_OPEN:
            diags.append(f"open-set variable in {where}: not in dialect {dialect.value}")
        if sort is Sort.SET and dialect not in _ALLOWS_MSO:
            diags.append(f"point-set variable in {where}: not in dialect {dialect.value}")

    def walk(g: Formula, scope: dict[str, Sort]) -> None:
        if isinstance(g, PointEq):
            term(g.left, scope, "equality", Sort.POINT)
            term(g.right, scope, "equality", Sort.POINT)
        elif isinstance(g, SetEq):
            for side in (g.left, g.right):
                if not isinstance(side, Var) or side.sort is Sort.POINT:
                    diags.append("set equality needs set variables")
                    return
            if g.left.sort is not g.right.sort:
                diags.append(f"set equality between sorts {g.left.sort.value} and {g.right.sort.value}")
            term(g.left, scope, "set equality", g.left.sort)
            term(g.right, scope, "set equality", g.left.sort)
        elif isinstance(g, MemberOpen):
            term(g.point, scope, "membership", Sort.POINT)
            term(g.set, scope, "membership", Sort.OPEN)
        elif isinstance(g, MemberSet):
            term(g.point, scope, "membership", Sort.POINT)
            term(g.set, scope, "membership", Sort.SET)
        elif isinstance(g, Leq):
            if dialect not in _ALLOWS_LEQ:
                diags.append(f"atom '<=' not in dialect {dialect.value}")
            term(g.left, scope, "'<='", Sort.POINT)
            term(g.right, scope, "'<='", Sort.POINT)
        elif isinstance(g, Not):
            walk(g.body, scope)
        elif isinstance(g, BINARY):
            walk(g.left, scope)
            walk(g.right, scope)
        elif isinstance(g, (Forall, Exists)):
            sort_allowed(g.var.sort, "quantifier")
            walk(g.body, {**scope, g.var.name: g.var.sort})
        elif isinstance(g, CountMod):
            if dialect not in _ALLOWS_MSO:
                diags.append(f"counting quantifier not in dialect {dialect.value}")
            if g.var.sort is not Sort.POINT:
                diags.append("counting quantifier must bind a point variable")
            if g.modulus < 1 or not 0 <= g.residue < g.modulus:
                diags.append(f"count[{g.modulus},{g.residue}] out of range")
            walk(g.body, {**scope, g.var.name: Sort.POINT})
        else:
            diags.append(f"not a formula node: {g!r}")

    walk(f, dict(free or {}))
    return diags


def dialects_admitting(f: Formula, constants: ConstantTable | None = None,
                       free: dict[str, Sort] | None = None) -> set[Dialect]:
    return {d for d in Dialect if not check_well_sorted(f, d, constants, free)}


def weakest_dialect(f: Formula, constants: ConstantTable | None = None,
                    free: dict[str, Sort] | None = None) -> Dialect | None:
    """First-order dialects win over MSO ones; FOL wins ties with TFOL."""
    ok = dialects_admitting(f, constants, free)
    for d in (Dialect.FOL, Dialect.TFOL, Dialect.CMSOL, Dialect.TCMSOL):
        if d in ok:
            return d
    return None
