"""Formula language for finite topologies and binary relations."""
from .ast import (
    And, Const, CountMod, Dialect, Exists, Forall, Formula, FreshNames, Iff,
    Implies, Leq, MemberOpen, MemberSet, Not, Or, PointEq, SetEq, Sort, Var,
    free_vars, max_constant, subformulas,
)
from .builtins import BUILTIN_NAMES, builtin, builtin_text
from .check import (
    ConstantMode, ConstantTable, check_well_sorted, dialects_admitting,
    weakest_dialect,
)
from .syntax import FormulaSyntaxError, parse_formula, render_formula

__all__ = [
    "And", "Const", "CountMod", "Dialect", "Exists", "Forall", "Formula",
    "FreshNames", "Iff", "Implies", "Leq", "MemberOpen", "MemberSet", "Not",
    "Or", "PointEq", "SetEq", "Sort", "Var", "free_vars", "max_constant",
    "subformulas", "BUILTIN_NAMES", "builtin", "builtin_text", "ConstantMode",
    "ConstantTable", "check_well_sorted", "dialects_admitting",
    "weakest_dialect", "FormulaSyntaxError", "parse_formula", "render_formula",
]
