"""ASCII concrete syntax: parser and printer.

Grammar (loosest to tightest)::

    formula := f '<->' f | f '->' f | f '|' f | f '&' f | '~' f
             | 'forall' v '.' f | 'exists' v '.' f
             | 'false' | 'true' | term 'in' term | '(' f ')'
    term    := v | '{' v '|' f '}'
    v       := ident (':' int)?

``&``, ``|`` and ``->`` associate to the right, ``<->`` to the left, and
quantifier bodies extend as far right as possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from . import internal as I
from .errors import ModeError, ParseError
from .nominal import Atom, Bound
from .surface import All, And, Bot, Comp, In, Neg, Var, iff, imp, or_, top


class Mode(str, Enum):
    TST = "tst"
    NF = "nf"
    RAW = "raw"


@dataclass(frozen=True)
class SourceText:
    text: str
    mode: Mode = Mode.TST


KEYWORDS = {"forall", "exists", "in", "true", "false"}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>[~&|(){}.:])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ws":
            for i, ch in enumerate(chunk):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            if kind == "ident" and chunk in KEYWORDS:
                kind = chunk
            elif kind in ("sym", "iff", "imp"):
                kind = chunk
            out.append(Token(kind, chunk, line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str, mode: Mode):
        self.toks = tokenize(text)
        self.i = 0
        self.mode = Mode(mode)
        self.scope: list[tuple[str, Optional[int]]] = []
        self.mode_error: Optional[ModeError] = None

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def eat(self, kind) -> Token:
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def at(self, *kinds) -> bool:
        return self.tok.kind in kinds

    # -- entry

    def top(self):
        x = self._top()
        # structural errors win over level-annotation complaints
        if self.mode_error:
            raise self.mode_error
        return x

    def _top(self):
        if self.at("ident", "{"):
            save = self.i
            t = self.term()
            if self.at("eof"):
                return t
            self.i = save
        f = self.formula()
        if not self.at("eof"):
            raise self.error(f"unexpected {self.tok.text!r}")
        return f

    # -- formulae

    def formula(self):
        f = self.implication()
        while self.at("<->"):
            self.i += 1
            f = iff(f, self.implication())
        return f

    def implication(self):
        f = self.disjunction()
        if self.at("->"):
            self.i += 1
            return imp(f, self.implication())
        return f

    def disjunction(self):
        f = self.conjunction()
        if self.at("|"):
            self.i += 1
            return or_(f, self.disjunction())
        return f

    def conjunction(self):
        f = self.unary()
        if self.at("&"):
            self.i += 1
            return And(f, self.conjunction())
        return f

    def unary(self):
        if self.at("~"):
            self.i += 1
            return Neg(self.unary())
        if self.at("forall", "exists"):
            q = self.eat(self.tok.kind).kind
            name, lv = self.binder()
            self.eat(".")
            self.scope.append((name, lv))
            try:
                body = self.formula()
            finally:
                self.scope.pop()
            if q == "forall":
                return All(lv, body, name)
            return Neg(All(lv, Neg(body), name))
        return self.atomic()

    def atomic(self):
        if self.at("false"):
            self.i += 1
            return Bot()
        if self.at("true"):
            self.i += 1
            return top()
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.eat(")")
            return f
        if self.at("ident", "{"):
            t = self.term()
            self.eat("in")
            return In(t, self.term())
        found = self.tok.text or "end of input"
        raise self.error(f"expected a formula, found {found!r}")

    # -- terms and names

    def term(self):
        if self.at("{"):
            self.i += 1
            name, lv = self.binder()
            self.eat("|")
            self.scope.append((name, lv))
            try:
                body = self.formula()
            finally:
                self.scope.pop()
            self.eat("}")
            return Comp(lv, body, name)
        name, lv = self.name()
        for depth, (n, l) in enumerate(reversed(self.scope)):
            if n == name and l == lv:
                return Var(Bound(depth, lv))
        return Var(Atom.named(name, lv))

    def binder(self):
        return self.name()

    def name(self):
        tok = self.eat("ident")
        lv = None
        if self.at(":"):
            colon = self.eat(":")
            if self.mode is Mode.NF:
                self.mode_error = self.mode_error or ModeError(
                    f"level annotation on {tok.text!r} not allowed in NF mode "
                    f"(line {colon.line}, column {colon.col})"
                )
            lv = int(self.eat("int").text)
        elif self.mode is Mode.TST:
            self.mode_error = self.mode_error or ModeError(
                f"{tok.text!r} needs a level annotation in TST mode "
                f"(line {tok.line}, column {tok.col})"
            )
        return tok.text, lv


def parse(src: str | SourceText, mode: Mode | str = Mode.TST):
    """Parse a formula or term; sugar is expanded on the way in."""
    if isinstance(src, SourceText):
        src, mode = src.text, src.mode
    return _Parser(src, Mode(mode)).top()


# -- printing --------------------------------------------------------------

def _atom_text(name: str, lv) -> str:
    return name if lv is None else f"{name}:{lv}"


class _Printer:
    def __init__(self, x):
        self.taken = {a.name for a in x.free}
        self.scope: list[str] = []

    def bind(self, hint: Optional[str]) -> str:
        base = hint or "x"
        if re.fullmatch(r"_\d+", base):
            base = "x"
        base = base.rstrip("0123456789") or "x"
        cand, k = base, 0
        while cand in self.taken or cand in self.scope or cand in KEYWORDS:
            k += 1
            cand = f"{base}{k}"
        return cand

    def name(self, n) -> str:
        if isinstance(n, Bound):
            return _atom_text(self.scope[-1 - n.index], n.level)
        return _atom_text(n.name, n.level)

    def under(self, lv, hint, body):
        nm = self.bind(hint)
        self.scope.append(nm)
        try:
            return _atom_text(nm, lv), self.formula(body)
        finally:
            self.scope.pop()

    def formula(self, f) -> str:
        match f:
            case Bot():
                return "false"
            case Neg(b):
                inner = self.formula(b)
                return f"~({inner})" if isinstance(b, And) else f"~{inner}"
            case And(l, r):
                left = self.formula(l)
                if isinstance(l, And) or _open_ended(l):
                    left = f"({left})"
                return f"{left} & {self.formula(r)}"
            case All(lv, b, h):
                v, body = self.under(lv, h, b)
                return f"forall {v}. {body}"
            case In(t, s):
                return f"{self.term(t)} in {self.term(s)}"
        raise TypeError(f)

    def term(self, t) -> str:
        match t:
            case Var(n):
                return self.name(n)
            case Comp(lv, b, h):
                v, body = self.under(lv, h, b)
                return f"{{{v} | {body}}}"
        raise TypeError(t)


def _open_ended(f) -> bool:
    while isinstance(f, Neg):
        f = f.body
    return isinstance(f, All)


def show(x) -> str:
    """Print surface or internal syntax; inverse of :func:`parse` up to alpha."""
    if isinstance(x, (I.IPred, I.ISet)):
        from .normalize import embed

        x = embed(x)
    p = _Printer(x)
    if isinstance(x, (Var, Comp)):
        return p.term(x)
    return p.formula(x)


print_syntax = show
