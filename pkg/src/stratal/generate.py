"""Seeded random syntax, stratified by construction."""

from __future__ import annotations

import random

from . import internal as I
from .nominal import Atom, Bound
from .surface import All, And, Bot, Comp, In, Neg, Var

LEVELS = (0, 1, 2, 3)
FREE_NAMES = ("p", "q", "r")


class SurfaceGen:
    """Exact-size generator for stratified formulae and terms.

    Every membership is built at a chosen level ``l`` with a level-``l``
    element and a level-``l+1`` set, so the output always stratifies.
    """

    def __init__(self, rng: random.Random, levels=LEVELS, free_names=FREE_NAMES,
                 bound_bias: float = 0.6):
        self.rng = rng
        self.levels = tuple(levels)
        self.free_names = tuple(free_names)
        self.bound_bias = bound_bias

    def atom(self, lv) -> Atom:
        return Atom.named(self.rng.choice(self.free_names), lv)

    def name(self, lv, scope):
        idx = [d for d, l in enumerate(reversed(scope)) if l == lv]
        if idx and self.rng.random() < self.bound_bias:
            return Bound(self.rng.choice(idx), lv)
        return self.atom(lv)

    def formula(self, n: int, scope=()):
        r = self.rng
        if n == 1:
            return Bot()
        if n == 2:
            return Neg(Bot()) if r.random() < 0.5 else All(r.choice(self.levels), Bot(), "x")
        kind = r.choices(("neg", "all", "and", "in"), weights=(1, 2, 2, 4))[0]
        if kind == "neg":
            return Neg(self.formula(n - 1, scope))
        if kind == "all":
            lv = r.choice(self.levels)
            return All(lv, self.formula(n - 1, scope + (lv,)), r.choice("xyz"))
        k = r.randint(1, n - 2)
        if kind == "and":
            return And(self.formula(k, scope), self.formula(n - 1 - k, scope))
        lv = r.choice(self.levels[:-1])
        return In(self.term(lv, k, scope), self.term(lv + 1, n - 1 - k, scope))

    def term(self, lv: int, n: int, scope=()):
        if n == 1:
            return Var(self.name(lv, scope))
        return Comp(lv - 1, self.formula(n - 1, scope + (lv - 1,)), self.rng.choice("abc"))


def _to_nf(x, lo):
    # distinct leveled free atoms must stay distinct once levels are erased
    match x:
        case Bot():
            return x
        case Neg(b):
            return Neg(_to_nf(b, lo))
        case And(l, r):
            return And(_to_nf(l, lo), _to_nf(r, lo))
        case All(_, b, h) | Comp(_, b, h):
            return type(x)(None, _to_nf(b, lo), h)
        case In(t, s):
            return In(_to_nf(t, lo), _to_nf(s, lo))
        case Var(n):
            if isinstance(n, Bound):
                return Var(Bound(n.index, None))
            return Var(Atom.named(f"{n.name}{n.level - lo}", None))
    raise TypeError(x)


def generate(seed: int, max_size: int, mode: str = "tst", exact: bool = False):
    """A stratified (TST) or stratifiable (NF) formula of size at most ``max_size``."""
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    rng = random.Random(seed)
    n = max_size if exact else rng.randint(1, max_size)
    f = SurfaceGen(rng).formula(n)
    if str(mode).lower().endswith("nf"):
        return _to_nf(f, min(LEVELS) - 1)
    return f


def generate_term(seed: int, max_size: int, level: int, exact: bool = False):
    rng = random.Random(seed)
    n = max_size if exact else rng.randint(1, max_size)
    return SurfaceGen(rng).term(level, n)


class InternalGen:
    """Exact-size generator for well-formed internal predicates and sets."""

    def __init__(self, rng: random.Random, levels=LEVELS, free_atoms=None,
                 bound_bias: float = 0.5):
        self.rng = rng
        self.levels = tuple(levels)
        self.free_atoms = list(free_atoms) if free_atoms is not None else [
            Atom.named(n, lv) for n in FREE_NAMES for lv in range(min(levels) - 1, max(levels) + 2)
        ]
        self.bound_bias = bound_bias

    def name(self, lv, scope):
        idx = [d for d, l in enumerate(reversed(scope)) if l == lv]
        if idx and self.rng.random() < self.bound_bias:
            return Bound(self.rng.choice(idx), lv)
        pool = [a for a in self.free_atoms if a.level == lv]
        if not pool:
            return Atom.named(self.rng.choice(FREE_NAMES), lv)
        return self.rng.choice(pool)

    def pred(self, n: int, scope=()):
        r = self.rng
        if n == 1:
            return I.And(())
        if n == 2:
            kind = r.choice(("neg", "all", "and"))
        else:
            kind = r.choices(("neg", "all", "and", "elt"), weights=(1, 2, 2, 4))[0]
        if kind == "neg":
            return I.Neg(self.pred(n - 1, scope))
        if kind == "all":
            lv = r.choice(self.levels)
            return I.All(lv, self.pred(n - 1, scope + (lv,)), r.choice("xyz"))
        if kind == "and":
            parts = _split(r, n - 1, r.randint(1, 3))
            return I.And(tuple(self.pred(k, scope) for k in parts))
        lv = r.choice(self.levels[:-1])
        return I.Elt(self.set(lv, n - 2, scope), self.name(lv + 1, scope))

    def set(self, lv: int, n: int, scope=()):
        if n <= 1:
            return I.Atm(self.name(lv, scope))
        return I.St(lv - 1, self.pred(n - 1, scope + (lv - 1,)), self.rng.choice("abc"))


def _split(rng, total: int, parts: int) -> list[int]:
    parts = max(1, min(parts, total))
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def isize(x) -> int:
    match x:
        case I.Atm():
            return 1
        case I.And(ms):
            return 1 + sum(isize(m) for m in ms)
        case I.Neg(b) | I.All(_, b) | I.St(_, b):
            return 1 + isize(b)
        case I.Elt(s, _):
            return 2 + isize(s)
    raise TypeError(x)
