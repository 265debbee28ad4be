"""Library of named TCMSOL formulas for common topological properties."""
from __future__ import annotations

from .ast import Formula, Sort
from .syntax import parse_formula


def _and(parts: list[str]) -> str:
    return " & ".join(f"({p})" for p in parts)


def _clopen(u: str, v: str = "V", z: str = "z") -> str:
    # the complement of u is open
    return f"ex open {v}. all point {z}. ({z} in {v} <-> ~{z} in {u})"


def _subset(v: str, u: str, z: str = "z") -> str:
    return f"all point {z}. ({z} in {v} -> {z} in {u})"


def _true() -> str:
    return "all point x. x = x"


def _t0() -> str:
    return ("all point x. all point y. x = y | "
            "ex open U. (x in U & ~y in U) | (~x in U & y in U)")


def _t1() -> str:
    return "all point y. ex open U. all point x. (x in U <-> ~x = y)"


def _connected() -> str:
    return ("~(ex open U. ex open V. (ex point x. x in U) & (ex point x. x in V)"
            " & (all point x. ~(x in U & x in V)) & (all point x. x in U | x in V))")


def _pick(avoid: set[str], *candidates: str) -> str:
    return next(c for c in candidates if c not in avoid)


def _smallest_open(x: str = "x", U: str = "U") -> str:
    w = _pick({x, U}, "W", "V", "W1")
    z = _pick({x, U, w}, "z", "y", "z1")
    return f"{x} in {U} & (all open {w}. {x} in {w} -> {_subset(U, w, z)})"


def _minimal_open_const(r: int) -> str:
    members = _and([f"a{i} in U" for i in range(1, r + 1)])
    others = " & ".join(f"~x = a{i}" for i in range(1, r + 1))
    minimal = f"all open V. ({_subset('V', 'U', 'y')}) -> (V = U | all point y. ~y in V)"
    return f"ex open U. {members} & (all point x. ({others}) -> ~x in U) & ({minimal})"


def _pairwise_separated(r: int) -> str:
    binders = " ".join(f"ex open U{i}." for i in range(1, r + 1))
    parts = [f"a{i} in U{i}" for i in range(1, r + 1)]
    parts += [
        f"all point x. ~(x in U{i} & x in U{j})"
        for i in range(1, r + 1)
        for j in range(i + 1, r + 1)
    ]
    return f"{binders} {_and(parts)}"


def _different_components(r: int) -> str:
    # finite spaces: components coincide with quasi-components, so two
    # points lie in different components iff some clopen set separates them
    parts = [
        f"ex open U. ({_clopen('U')}) & a{i} in U & ~a{j} in U"
        for i in range(1, r + 1)
        for j in range(i + 1, r + 1)
    ]
    return _and(parts) if parts else _true()


def _even_set_not_open() -> str:
    return ("ex set S. (count[2,0] x. x in S) & "
            "~(ex open U. all point x. (x in U <-> x in S))")


def _clopen_param(U: str = "U") -> str:
    return _clopen(U, _pick({U}, "V", "W"), _pick({U}, "z", "y"))


def _same_component(x: str = "x", y: str = "y") -> str:
    u = _pick({x, y}, "U", "U1", "U2")
    v = _pick({x, y, u}, "V", "V1", "V2")
    z = _pick({x, y, u, v}, "z", "z1", "z2")
    return f"all open {u}. ({_clopen(u, v, z)}) -> ({x} in {u} <-> {y} in {u})"


_R_BUILTINS = {
    "minimal_open_const": _minimal_open_const,
    "pairwise_separated": _pairwise_separated,
    "different_components": _different_components,
}

_CLOSED = {
    "true": _true,
    "t0": _t0,
    "t1": _t1,
    "connected": _connected,
    "even_set_not_open": _even_set_not_open,
}

# name -> (builder, free-variable sorts keyed by parameter name)
_PARAMETRIC = {
    "smallest_open": (_smallest_open, {"x": Sort.POINT, "U": Sort.OPEN}),
    "clopen": (_clopen_param, {"U": Sort.OPEN}),
    "same_component": (_same_component, {"x": Sort.POINT, "y": Sort.POINT}),
}

BUILTIN_NAMES = tuple(_CLOSED) + tuple(_R_BUILTINS) + tuple(_PARAMETRIC)


def builtin_text(name: str, r: int | None = None, **params: str) -> tuple[str, dict[str, Sort]]:
    """Source text of a builtin plus the sorts of its free variables."""
    if name in _CLOSED:
        if params:
            raise ValueError(f"builtin {name!r} takes no parameters")
        return _CLOSED[name](), {}
    if name in _R_BUILTINS:
        if r is None or r < 1:
            raise ValueError(f"builtin {name!r} needs r >= 1")
        if r > 9:
            raise ValueError("at most 9 constants are supported")
        return _R_BUILTINS[name](r), {}
    if name in _PARAMETRIC:
        build, sorts = _PARAMETRIC[name]
        unknown = set(params) - set(sorts)
        if unknown:
            raise ValueError(f"unknown parameters for {name!r}: {sorted(unknown)}")
        names = {k: params.get(k, k) for k in sorts}
        return build(**names), {names[k]: s for k, s in sorts.items()}
    raise ValueError(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}")


def builtin(name: str, r: int | None = None, **params: str) -> Formula:
    """Return the named builtin formula.

    ``r`` is required by the constant-parameterized builtins
    (``minimal_open_const``, ``pairwise_separated``, ``different_components``);
    the open formulas accept variable names for their free variables, e.g.
    ``builtin("smallest_open", x="p", U="W")``.
    """
    text, free = builtin_text(name, r, **params)
    return parse_formula(text, "TCMSOL", free=free)


def builtin_free_sorts(name: str, **params: str) -> dict[str, Sort]:
    return builtin_text(name, 1 if name in _R_BUILTINS else None, **params)[1]
