"""Surface syntax of Stratified Sets: formulae and terms up to alpha.

Binders are nameless (locally nameless representation): bound occurrences
are ``Bound`` indices and free ones are ``Atom`` values, so ``==`` is
alpha-equivalence.  Use :func:`forall` and :func:`comp` to bind a named
atom and :meth:`All.open` / :meth:`Comp.open` to get the body back at a
chosen name.
"""

from __future__ import annotations

from dataclasses import field
from typing import Optional

from ._node import Node, free_of, name_key, node
from .errors import LevelMismatch
from .nominal import Atom, Bound, Permutation, fresh


class Formula(Node):
    def permute(self, pi):
        return permute(pi, self)


class Term(Node):
    def permute(self, pi):
        return permute(pi, self)


@node
class Bot(Formula):
    def _key(self):
        return "F"

    def _free(self):
        return frozenset()


@node
class Neg(Formula):
    body: Formula

    def _key(self):
        return f"N({self.body.key})"

    def _free(self):
        return self.body.free


@node
class And(Formula):
    left: Formula
    right: Formula

    def _key(self):
        return f"C({self.left.key},{self.right.key})"

    def _free(self):
        return self.left.free | self.right.free


@node
class All(Formula):
    level: Optional[int]
    body: Formula
    hint: Optional[str] = field(default=None, compare=False)

    def _key(self):
        return f"A{self.level}({self.body.key})"

    def _free(self):
        return self.body.free

    def open(self, a: Atom) -> Formula:
        return instantiate(self.body, Var(a))


@node
class In(Formula):
    elem: Term
    set: Term

    def _key(self):
        return f"E({self.elem.key},{self.set.key})"

    def _free(self):
        return self.elem.free | self.set.free


@node
class Var(Term):
    name: Atom | Bound

    def _key(self):
        return f"v{name_key(self.name)}"

    def _free(self):
        return free_of(self.name)


@node
class Comp(Term):
    level: Optional[int]
    body: Formula
    hint: Optional[str] = field(default=None, compare=False)

    def _key(self):
        return f"S{self.level}({self.body.key})"

    def _free(self):
        return self.body.free

    def open(self, a: Atom) -> Formula:
        return instantiate(self.body, Var(a))


for _cls in (Bot, Neg, And, All, In, Var, Comp):
    _cls.__repr__ = lambda self: _repr(self)


def _repr(x) -> str:
    from .syntax import show

    return f"<{type(x).__name__} {show(x)}>"


# -- binding ---------------------------------------------------------------

def _map(x, on_name, depth=0):
    """Rebuild ``x`` applying ``on_name(name, depth) -> Term`` at variables."""
    match x:
        case Bot():
            return x
        case Neg(b):
            return Neg(_map(b, on_name, depth))
        case And(l, r):
            return And(_map(l, on_name, depth), _map(r, on_name, depth))
        case All(lv, b, h):
            return All(lv, _map(b, on_name, depth + 1), h)
        case In(t, s):
            return In(_map(t, on_name, depth), _map(s, on_name, depth))
        case Var(n):
            return on_name(x, n, depth)
        case Comp(lv, b, h):
            return Comp(lv, _map(b, on_name, depth + 1), h)
    raise TypeError(f"not surface syntax: {x!r}")


def instantiate(body, t: Term):
    """Replace the outermost bound index of ``body`` by the closed term ``t``."""

    def on(v, n, depth):
        if isinstance(n, Bound) and n.index == depth:
            return t
        return v

    return _map(body, on)


def abstract(body, a: Atom):
    """Turn free occurrences of ``a`` into the outermost bound index."""
    if a not in body.free:
        return body

    def on(v, n, depth):
        if n == a:
            return Var(Bound(depth, a.level))
        return v

    return _map(body, on)


def forall(a: Atom, body: Formula) -> All:
    return All(a.level, abstract(body, a), a.display_name or a.name)


def comp(a: Atom, body: Formula) -> Comp:
    return Comp(a.level, abstract(body, a), a.display_name or a.name)


def var(a: Atom) -> Var:
    return Var(a)


def level_of(t: Term) -> Optional[int]:
    if isinstance(t, Var):
        return t.name.level
    return None if t.level is None else t.level + 1


# -- operations ------------------------------------------------------------

def alpha_eq(x, y) -> bool:
    return x == y


def permute(pi: Permutation, x):
    def on(v, n, depth):
        if isinstance(n, Atom):
            return Var(pi(n))
        return v

    return _map(x, on)


def subst(x, a: Atom, t: Term):
    """Capture-avoiding ``x[a := t]``."""
    lt = level_of(t)
    if a.level is not None and lt is not None and lt != a.level:
        raise LevelMismatch(f"cannot substitute a level-{lt} term for {a!r}")
    if a not in x.free:
        return x
    if _dangling(t):
        raise ValueError("substituted term must be locally closed")

    def on(v, n, depth):
        return t if n == a else v

    return _map(x, on)


def _dangling(x, depth=0) -> bool:
    match x:
        case Bot():
            return False
        case Neg(b):
            return _dangling(b, depth)
        case And(l, r) | In(l, r):
            return _dangling(l, depth) or _dangling(r, depth)
        case All(_, b) | Comp(_, b):
            return _dangling(b, depth + 1)
        case Var(n):
            return isinstance(n, Bound) and n.index >= depth
    raise TypeError(x)


def size(x) -> int:
    match x:
        case Bot() | Var():
            return 1
        case Neg(b) | All(_, b) | Comp(_, b):
            return size(b) + 1
        case And(l, r) | In(l, r):
            return size(l) + size(r) + 1
    raise TypeError(x)


def count_bound(body, depth=0) -> int:
    """Free occurrences, in ``body``, of the binder whose body it is."""
    match body:
        case Bot():
            return 0
        case Neg(b):
            return count_bound(b, depth)
        case And(l, r) | In(l, r):
            return count_bound(l, depth) + count_bound(r, depth)
        case All(_, b) | Comp(_, b):
            return count_bound(b, depth + 1)
        case Var(n):
            return int(isinstance(n, Bound) and n.index == depth)
    raise TypeError(body)


def count_free(x, a: Atom) -> int:
    match x:
        case Bot():
            return 0
        case Neg(b) | All(_, b) | Comp(_, b):
            return count_free(b, a)
        case And(l, r) | In(l, r):
            return count_free(l, a) + count_free(r, a)
        case Var(n):
            return int(n == a)
    raise TypeError(x)


def fresh_for(level, *xs, avoid=()) -> Atom:
    seen = set(avoid)
    for x in xs:
        seen |= x.free
    return fresh(level, seen)


# -- sugar -----------------------------------------------------------------
# Sugar expands immediately; none of these are AST constructors.

def top() -> Formula:
    return Neg(Bot())


def or_(phi: Formula, psi: Formula) -> Formula:
    return Neg(And(Neg(phi), Neg(psi)))


def imp(phi: Formula, psi: Formula) -> Formula:
    return or_(Neg(phi), psi)


def iff(phi: Formula, psi: Formula) -> Formula:
    return And(imp(phi, psi), imp(psi, phi))


def exists(a: Atom, body: Formula) -> Formula:
    return Neg(forall(a, Neg(body)))


def conj(*phis: Formula) -> Formula:
    """Right-nested binary conjunction; ``top()`` when empty."""
    if not phis:
        return top()
    out = phis[-1]
    for p in reversed(phis[:-1]):
        out = And(p, out)
    return out


_SUGAR = {
    "or": or_,
    "imp": imp,
    "iff": iff,
    "exists": exists,
}


def desugar(name: str, *args) -> Formula:
    """Expand a sugared connective into core constructors only."""
    if name == "true":
        return top()
    if name == "false":
        return Bot()
    try:
        return _SUGAR[name](*args)
    except KeyError:
        raise ValueError(f"unknown sugar {name!r}") from None


def is_core(x) -> bool:
    return isinstance(x, (Bot, Neg, And, All, In, Var, Comp))
