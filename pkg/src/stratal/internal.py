"""Internal (normal-form) syntax: level-indexed sets and predicates.

Membership only ever has an atom on the right (``Elt``); conjunction takes
a finite set, stored deduplicated in canonical order.  Binders are nameless
exactly as in :mod:`stratal.surface`.
"""

from __future__ import annotations

from dataclasses import field
from typing import Iterable, Optional

from ._node import Node, free_of, name_key, node
from .errors import FreshnessViolation, KindError, LevelMismatch
from .nominal import Atom, Bound, Permutation, fresh


class IPred(Node):
    def permute(self, pi):
        return permute(pi, self)


class ISet(Node):
    def permute(self, pi):
        return permute(pi, self)


def _canonical(members) -> tuple:
    return tuple(sorted(set(members), key=lambda m: m.key))


@node
class And(IPred):
    members: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "members", _canonical(self.members))

    def _key(self):
        return "C[" + ",".join(m.key for m in self.members) + "]"

    def _free(self):
        return frozenset().union(*(m.free for m in self.members))


@node
class Neg(IPred):
    body: IPred

    def _key(self):
        return f"N({self.body.key})"

    def _free(self):
        return self.body.free


@node
class All(IPred):
    level: Optional[int]
    body: IPred
    hint: Optional[str] = field(default=None, compare=False)

    def _key(self):
        return f"A{self.level}({self.body.key})"

    def _free(self):
        return self.body.free

    def open(self, a: Atom) -> IPred:
        return instantiate(self.body, a)


@node
class Elt(IPred):
    set: ISet
    name: Atom | Bound

    def __post_init__(self):
        lx, la = level(self.set), self.name.level
        if lx is not None and la is not None and la != lx + 1:
            raise LevelMismatch(
                f"membership in {self.name!r} needs a level-{la - 1} set, got level {lx}"
            )

    def _key(self):
        return f"E({self.set.key},{name_key(self.name)})"

    def _free(self):
        return self.set.free | free_of(self.name)


@node
class Atm(ISet):
    name: Atom | Bound

    def _key(self):
        return f"a{name_key(self.name)}"

    def _free(self):
        return free_of(self.name)


@node
class St(ISet):
    level: Optional[int]
    body: IPred
    hint: Optional[str] = field(default=None, compare=False)

    def _key(self):
        return f"S{self.level}({self.body.key})"

    def _free(self):
        return self.body.free

    def open(self, a: Atom) -> IPred:
        return instantiate(self.body, a)


for _cls in (And, Neg, All, Elt, Atm, St):
    _cls.__repr__ = lambda self: f"<{type(self).__name__} {_show(self)}>"


def _show(x):
    from .syntax import show

    return show(x)


def level(x: ISet) -> Optional[int]:
    if isinstance(x, Atm):
        return x.name.level
    return None if x.level is None else x.level + 1


# -- binding ---------------------------------------------------------------

def _map(x, on_name, depth=0):
    """Rebuild ``x`` applying ``on_name(name, depth) -> name`` at every atom slot."""
    match x:
        case And(ms):
            return And(tuple(_map(m, on_name, depth) for m in ms))
        case Neg(b):
            return Neg(_map(b, on_name, depth))
        case All(lv, b, h):
            return All(lv, _map(b, on_name, depth + 1), h)
        case Elt(s, n):
            return Elt(_map(s, on_name, depth), on_name(n, depth))
        case Atm(n):
            return Atm(on_name(n, depth))
        case St(lv, b, h):
            return St(lv, _map(b, on_name, depth + 1), h)
    raise TypeError(f"not internal syntax: {x!r}")


def instantiate(body, a: Atom):
    def on(n, depth):
        if isinstance(n, Bound) and n.index == depth:
            return a
        return n

    return _map(body, on)


def abstract(body, a: Atom):
    if a not in body.free:
        return body

    def on(n, depth):
        return Bound(depth, a.level) if n == a else n

    return _map(body, on)


def permute(pi: Permutation, x):
    return _map(x, lambda n, d: pi(n) if isinstance(n, Atom) else n)


# -- construction ----------------------------------------------------------

def all_(a: Atom, body: IPred) -> All:
    return All(a.level, abstract(body, a), a.display_name or a.name)


def st(a: Atom, body: IPred) -> St:
    return St(a.level, abstract(body, a), a.display_name or a.name)


def conj(*members: IPred) -> And:
    return And(members)


_CONSTRUCTORS = {
    "And": lambda members: And(tuple(members)),
    "Neg": Neg,
    "All": all_,
    "Elt": lambda x, a: Elt(x, a),
    "Atm": Atm,
    "St": st,
}


def mk(constructor: str, *components):
    """Build a node by constructor name, validating level side-conditions."""
    try:
        build = _CONSTRUCTORS[constructor]
    except KeyError:
        raise KindError(f"unknown constructor {constructor!r}") from None
    return build(*components)


def age(x) -> int:
    match x:
        case Atm():
            return 0
        case And(ms):
            return 1 + max((age(m) for m in ms), default=0)
        case Neg(b) | All(_, b) | St(_, b):
            return 1 + age(b)
        case Elt(s, _):
            return 1 + age(s)
    raise TypeError(x)


def minlev(*xs) -> int:
    """Least level mentioned; accepts predicates, sets and atoms mixed."""
    return min(_minlev(x) for x in xs)


def _minlev(x) -> int:
    match x:
        case Atom() | Bound():
            return x.level
        case Atm(n):
            return n.level
        case And(ms):
            return min([0] + [_minlev(m) for m in ms])
        case Neg(b):
            return _minlev(b)
        case All(lv, b) | St(lv, b):
            return min(lv, _minlev(b))
        case Elt(s, n):
            return min(_minlev(s), n.level)
    raise TypeError(x)


def concrete(x: ISet, a: Atom) -> IPred:
    """Concretion ``x@a`` of an internal comprehension at a fresh atom."""
    if not isinstance(x, St):
        raise KindError("only internal comprehensions can be concreted")
    if a.level != x.level:
        raise LevelMismatch(f"{a!r} is not at the binder level {x.level}")
    if a in x.free:
        raise FreshnessViolation(f"{a!r} is in the support of the set")
    return instantiate(x.body, a)


def well_formed(x, scope=()) -> bool:
    """Deep re-check of every level side-condition (``scope``: bound levels)."""

    def name_ok(n, scope):
        if isinstance(n, Bound):
            return n.index < len(scope) and scope[-1 - n.index] == n.level
        return True

    match x:
        case And(ms):
            return all(well_formed(m, scope) for m in ms)
        case Neg(b):
            return well_formed(b, scope)
        case All(lv, b) | St(lv, b):
            return well_formed(b, scope + (lv,))
        case Elt(s, n):
            ls = level(s)
            return (
                name_ok(n, scope)
                and well_formed(s, scope)
                and (ls is None or n.level is None or n.level == ls + 1)
            )
        case Atm(n):
            return name_ok(n, scope)
    return False


# -- sugar -----------------------------------------------------------------

FALSE = Neg(And(()))
TRUE = And(())


def or_(members: Iterable[IPred]) -> IPred:
    return Neg(And(tuple(Neg(m) for m in members)))


def imp(x: IPred, y: IPred) -> IPred:
    return or_((Neg(x), y))


def iff(x: IPred, y: IPred) -> IPred:
    return And((imp(x, y), imp(y, x)))


def emptyset(i: int, binder: Optional[Atom] = None) -> St:
    a = binder if binder is not None else fresh(i - 1)
    if a.level != i - 1:
        raise LevelMismatch(f"binder of a level-{i} set must be at level {i - 1}")
    return st(a, FALSE)


def fullset(i: int, binder: Optional[Atom] = None) -> St:
    a = binder if binder is not None else fresh(i - 1)
    if a.level != i - 1:
        raise LevelMismatch(f"binder of a level-{i} set must be at level {i - 1}")
    return st(a, TRUE)


def internal_sugar(name: str, *args):
    match name:
        case "false":
            return FALSE
        case "true":
            return TRUE
        case "or":
            return or_(args)
        case "imp":
            return imp(*args)
        case "iff":
            return iff(*args)
        case "emptyset":
            return emptyset(*args)
        case "fullset":
            return fullset(*args)
    raise ValueError(f"unknown internal sugar {name!r}")


# -- JSON ------------------------------------------------------------------

def _name_json(n):
    if isinstance(n, Bound):
        return {"bound": n.index, "level": n.level}
    return {"atom": n.name, "level": n.level}


def _name_from(d):
    if "bound" in d:
        return Bound(d["bound"], d["level"])
    return Atom.named(d["atom"], d["level"])


def to_json(x):
    """Constructor-shaped JSON; ``And`` members in canonical order."""
    match x:
        case And(ms):
            return {"And": [to_json(m) for m in ms]}
        case Neg(b):
            return {"Neg": to_json(b)}
        case All(lv, b, h) | St(lv, b, h):
            return {type(x).__name__: {"level": lv, "hint": h, "body": to_json(b)}}
        case Elt(s, n):
            return {"Elt": {"set": to_json(s), "name": _name_json(n)}}
        case Atm(n):
            return {"Atm": _name_json(n)}
    raise TypeError(x)


def from_json(d):
    [(tag, v)] = d.items()
    match tag:
        case "And":
            return And(tuple(from_json(m) for m in v))
        case "Neg":
            return Neg(from_json(v))
        case "All" | "St":
            return (All if tag == "All" else St)(v["level"], from_json(v["body"]), v.get("hint"))
        case "Elt":
            return Elt(from_json(v["set"]), _name_from(v["name"]))
        case "Atm":
            return Atm(_name_from(v))
    raise ValueError(f"unknown constructor {tag!r}")
