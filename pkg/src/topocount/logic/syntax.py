"""Concrete text syntax: tokenizer, recursive-descent parser, printer.

Grammar (lowest to highest precedence)::

    formula  := iff
    iff      := implies ['<->' iff]
    implies  := or ['->' implies]
    or       := and {'|' and}
    and      := unary {'&' unary}
    unary    := '~' unary | quant | '(' formula ')' | atom
    quant    := ('all' | 'ex') ('point' | 'open' | 'set') IDENT '.' formula
              | 'count' '[' INT ',' INT ']' IDENT '.' formula
    atom     := term '=' term | term '<=' term | term 'in' IDENT
    term     := IDENT | CONST            (CONST is a1, a2, ...)

A quantifier body extends as far to the right as possible.  ``#`` starts a
comment that runs to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .ast import (
    And, Const, CountMod, Dialect, Exists, Forall, Formula, Iff, Implies, Leq,
    MemberOpen, MemberSet, Not, Or, PointEq, SetEq, Sort, Var,
)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<op><->|->|<=|[~&|().=\[\],])
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)

KEYWORDS = {"all", "ex", "count", "in", "point", "open", "set"}
_CONST_RE = re.compile(r"a([1-9][0-9]*)$")
_SORT_WORDS = {"point": Sort.POINT, "open": Sort.OPEN, "set": Sort.SET}


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, col0 = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, pos - col0 + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            col0 = m.end()
        elif kind not in ("ws", "comment"):
            word = m.group()
            if kind == "ident":
                if word in KEYWORDS:
                    kind = "kw"
                elif _CONST_RE.match(word):
                    kind = "const"
            tokens.append(Token(kind, word, line, pos - col0 + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - col0 + 1))
    return tokens


_OPEN_DIALECTS = {Dialect.TCMSOL, Dialect.TFOL}
_MSO_DIALECTS = {Dialect.TCMSOL, Dialect.CMSOL}
_LEQ_DIALECTS = {Dialect.CMSOL, Dialect.FOL}


class _Parser:
    def __init__(self, text: str, dialect: Dialect, free: dict[str, Sort], r: int | None):
        self.toks = tokenize(text)
        self.i = 0
        self.dialect = dialect
        self.scopes: list[dict[str, Sort]] = [dict(free)]
        self.r = r

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None) -> FormulaSyntaxError:
        tok = tok or self.tok
        return FormulaSyntaxError(msg, tok.line, tok.column)

    def accept(self, text: str) -> Token | None:
        if self.tok.text == text and self.tok.kind in ("op", "kw"):
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return t

    def lookup(self, name: str) -> Sort | None:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def require(self, ok: bool, what: str, tok: Token) -> None:
        if not ok:
            raise self.error(f"{what} not in dialect {self.dialect.value}", tok)

    # grammar
    def parse(self) -> Formula:
        f = self.formula()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return f

    def formula(self) -> Formula:
        left = self.implies()
        if self.accept("<->"):
            return Iff(left, self.formula())
        return left

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.accept("|"):
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.accept("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        t = self.tok
        if self.accept("~"):
            return Not(self.unary())
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        if t.kind == "kw" and t.text in ("all", "ex"):
            return self.quantifier()
        if t.kind == "kw" and t.text == "count":
            return self.counting()
        return self.atom()

    def bound_var(self, sort: Sort) -> Var:
        t = self.tok
        if t.kind != "ident":
            raise self.error("expected a variable name")
        self.i += 1
        self.expect(".")
        return Var(t.text, sort)

    def scoped_body(self, var: Var) -> Formula:
        self.scopes.append({var.name: var.sort})
        try:
            return self.formula()
        finally:
            self.scopes.pop()

    def quantifier(self) -> Formula:
        qt = self.tok
        self.i += 1
        st = self.tok
        if st.text not in _SORT_WORDS:
            raise self.error("expected a sort: point, open or set")
        self.i += 1
        sort = _SORT_WORDS[st.text]
        if sort is Sort.OPEN:
            self.require(self.dialect in _OPEN_DIALECTS, "open-set quantifier", st)
        if sort is Sort.SET:
            self.require(self.dialect in _MSO_DIALECTS, "point-set quantifier", st)
        var = self.bound_var(sort)
        body = self.scoped_body(var)
        return Forall(var, body) if qt.text == "all" else Exists(var, body)

    def counting(self) -> Formula:
        ct = self.tok
        self.i += 1
        self.require(self.dialect in _MSO_DIALECTS, "counting quantifier", ct)
        self.expect("[")
        m = self.integer()
        self.expect(",")
        a = self.integer()
        self.expect("]")
        if m < 1 or not 0 <= a < m:
            raise self.error(f"count[{m},{a}] needs m >= 1 and 0 <= a < m", ct)
        var = self.bound_var(Sort.POINT)
        return CountMod(m, a, var, self.scoped_body(var))

    def integer(self) -> int:
        t = self.tok
        if t.kind != "int":
            raise self.error("expected an integer")
        self.i += 1
        return int(t.text)

    def term(self):
        t = self.tok
        if t.kind == "const":
            self.i += 1
            idx = int(t.text[1:])
            if self.r is not None and idx > self.r:
                raise self.error(f"constant {t.text} exceeds r={self.r}", t)
            return Const(idx), t
        if t.kind == "ident":
            self.i += 1
            sort = self.lookup(t.text)
            if sort is None:
                raise self.error(f"unbound variable {t.text!r}", t)
            return Var(t.text, sort), t
        raise self.error("expected a variable or constant")

    def atom(self) -> Formula:
        left, lt = self.term()
        op = self.tok
        if self.accept("="):
            right, rt = self.term()
            lsort = left.sort if isinstance(left, Var) else Sort.POINT
            rsort = right.sort if isinstance(right, Var) else Sort.POINT
            if lsort is not rsort:
                raise self.error(f"cannot compare {lsort.value} with {rsort.value}", op)
            if lsort is Sort.POINT:
                return PointEq(left, right)
            return SetEq(left, right)
        if self.accept("<="):
            self.require(self.dialect in _LEQ_DIALECTS, "'<=' atom", op)
            right, rt = self.term()
            for term, tk in ((left, lt), (right, rt)):
                if isinstance(term, Var) and term.sort is not Sort.POINT:
                    raise self.error("'<=' needs point arguments", tk)
            return Leq(left, right)
        if self.accept("in"):
            if isinstance(left, Var) and left.sort is not Sort.POINT:
                raise self.error("left of 'in' must be a point", lt)
            right, rt = self.term()
            if isinstance(right, Const) or right.sort is Sort.POINT:
                raise self.error("right of 'in' must be a set variable", rt)
            if right.sort is Sort.OPEN:
                return MemberOpen(left, right)
            return MemberSet(left, right)
        raise self.error("expected '=', '<=' or 'in'")


def parse_formula(
    text: str,
    dialect: Dialect | str = Dialect.TCMSOL,
    free: dict[str, Sort | str] | None = None,
    r: int | None = None,
) -> Formula:
    """Parse ``text`` into a formula of ``dialect``.

    ``free`` declares the sorts of free variables; ``r``, when given, bounds
    the constant indices.  Raises :class:`FormulaSyntaxError` with a line
    and column on syntax, sort or dialect errors.
    """
    dialect = Dialect(dialect)
    declared = {name: Sort(s) for name, s in (free or {}).items()}
    if dialect not in _OPEN_DIALECTS and Sort.OPEN in declared.values():
        raise FormulaSyntaxError(f"open-set variable not in dialect {dialect.value}", 1, 1)
    if dialect not in _MSO_DIALECTS and Sort.SET in declared.values():
        raise FormulaSyntaxError(f"point-set variable not in dialect {dialect.value}", 1, 1)
    return _Parser(text, dialect, declared, r).parse()


# Printer.

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_RIGHT_ASSOC = (Iff, Implies)


def _term(t) -> str:
    return f"a{t.index}" if isinstance(t, Const) else t.name


def _prec(f: Formula) -> int:
    if type(f) in _PREC:
        return _PREC[type(f)]
    if isinstance(f, (Forall, Exists, CountMod)):
        return 0
    return 6


def _wrap(f: Formula, minimum: int) -> str:
    s = render_formula(f)
    # quantifier operands are always parenthesized: their bodies run right
    return f"({s})" if _prec(f) < minimum or _prec(f) == 0 else s


def render_formula(f: Formula) -> str:
    """Text form that :func:`parse_formula` maps back to an equal AST."""
    if isinstance(f, PointEq):
        return f"{_term(f.left)} = {_term(f.right)}"
    if isinstance(f, SetEq):
        return f"{f.left.name} = {f.right.name}"
    if isinstance(f, (MemberOpen, MemberSet)):
        return f"{_term(f.point)} in {f.set.name}"
    if isinstance(f, Leq):
        return f"{_term(f.left)} <= {_term(f.right)}"
    if isinstance(f, Not):
        return "~" + _wrap(f.body, 5)
    if type(f) in _PREC:
        p = _PREC[type(f)]
        if isinstance(f, _RIGHT_ASSOC):
            lhs, rhs = _wrap(f.left, p + 1), _wrap(f.right, p)
        else:
            lhs, rhs = _wrap(f.left, p), _wrap(f.right, p + 1)
        return f"{lhs} {_SYMBOL[type(f)]} {rhs}"
    if isinstance(f, (Forall, Exists)):
        q = "all" if isinstance(f, Forall) else "ex"
        return f"{q} {f.var.sort.value} {f.var.name}. {render_formula(f.body)}"
    if isinstance(f, CountMod):
        return f"count[{f.modulus},{f.residue}] {f.var.name}. {render_formula(f.body)}"
    raise TypeError(f"not a formula: {f!r}")
