"""Big-step interpretation into internal syntax, and small-step rewriting.

The rewrite system has one root rule, ``t ∈ {a|φ} → φ[a:=t]``, closed under
every syntactic context.  ``interpret`` computes the normal form in internal
syntax directly; ``normalize`` either does that (``bigstep``) or iterates
single contractions under a chosen strategy.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import internal as I
from .errors import NotARedex, StratificationRequired
from .nominal import Atom, fresh
from .sigma import tin
from .stratify import Cycle, check_stratified, erase_levels, infer_levels
from .surface import (
    All, And, Bot, Comp, Formula, In, Neg, Var, abstract, instantiate,
)

Position = tuple


def _open_atom(lv, hint, avoid) -> Atom:
    # readable binder names in traces; falls back to the least fresh id
    if hint:
        a = Atom.named(hint, lv)
        if a not in avoid:
            return a
    return fresh(lv, avoid)


# -- interpretation --------------------------------------------------------

def _leveled(x) -> bool:
    try:
        check_stratified(x)
    except ValueError:
        return False
    return True


def interpret(x):
    """Interpret a stratified formula (-> IPred) or term (-> ISet)."""
    try:
        bad = check_stratified(x)
    except ValueError:
        raise StratificationRequired("interpretation needs leveled syntax") from None
    if bad:
        raise StratificationRequired(f"not stratified: {bad[0]}")
    return _interp(x)


interpret_formula = interpret
interpret_term = interpret


def _interp(x):
    match x:
        case Bot():
            return I.FALSE
        case Neg(b):
            return I.Neg(_interp(b))
        case And(l, r):
            return I.And((_interp(l), _interp(r)))
        case All(lv, _, h) | Comp(lv, _, h):
            a = _open_atom(lv, h, x.free)
            body = I.abstract(_interp(x.open(a)), a)
            return I.All(lv, body, h) if isinstance(x, All) else I.St(lv, body, h)
        case In(t, s):
            return tin(_interp(t), _interp(s))
        case Var(n):
            return I.Atm(n)
    raise TypeError(x)


def embed(X):
    """The evident injection of internal syntax into surface syntax.

    ``Neg(And ∅)`` maps to ``⊥`` and ``And ∅`` to ``¬⊥``; other conjunctions
    become right-nested binary ``∧`` in canonical member order.
    """
    match X:
        case I.Neg(I.And(())):
            return Bot()
        case I.And(ms):
            if not ms:
                return Neg(Bot())
            out = embed(ms[-1])
            for m in reversed(ms[:-1]):
                out = And(embed(m), out)
            return out
        case I.Neg(b):
            return Neg(embed(b))
        case I.All(lv, b, h):
            return All(lv, embed(b), h)
        case I.Elt(s, n):
            return In(embed(s), Var(n))
        case I.Atm(n):
            return Var(n)
        case I.St(lv, b, h):
            return Comp(lv, embed(b), h)
    raise TypeError(X)


# -- positions and single steps --------------------------------------------

def children(x) -> tuple:
    match x:
        case Bot() | Var():
            return ()
        case Neg(b) | All(_, b) | Comp(_, b):
            return (b,)
        case And(l, r) | In(l, r):
            return (l, r)
    raise TypeError(x)


def subterm(x, p: Position):
    """The node at ``p`` (bound indices relative to that node)."""
    for i in p:
        kids = children(x)
        if i >= len(kids):
            raise NotARedex(f"invalid position {list(p)}")
        x = kids[i]
    return x


def is_redex(x) -> bool:
    return isinstance(x, In) and isinstance(x.set, Comp)


def iter_positions(x, pos=()) -> Iterator[Position]:
    yield pos
    for i, k in enumerate(children(x)):
        yield from iter_positions(k, pos + (i,))


def redex_positions(x) -> list[Position]:
    """All reducts, leftmost-outermost first (pre-order)."""
    out = []

    def walk(x, pos):
        if is_redex(x):
            out.append(pos)
        for i, k in enumerate(children(x)):
            walk(k, pos + (i,))

    walk(x, ())
    return out


def _rebuild(x, kids):
    match x:
        case Neg():
            return Neg(kids[0])
        case And():
            return And(*kids)
        case In():
            return In(*kids)
        case All(lv, _, h):
            return All(lv, kids[0], h)
        case Comp(lv, _, h):
            return Comp(lv, kids[0], h)
    raise TypeError(x)


def _step(x, path, avoid):
    """Contract at ``path``; returns (new, redex, contractum), the latter two
    with enclosing binders opened at named atoms."""
    if not path:
        if not is_redex(x):
            raise NotARedex("no reduct at this position")
        con = instantiate(x.set.body, x.elem)
        return con, x, con
    i, rest = path[0], path[1:]
    kids = list(children(x))
    if i >= len(kids):
        raise NotARedex("invalid position")
    if isinstance(x, (All, Comp)):
        a = _open_atom(x.level, x.hint, avoid)
        new, red, con = _step(x.open(a), rest, avoid | {a})
        return _rebuild(x, [abstract(new, a)]), red, con
    new, red, con = _step(kids[i], rest, avoid)
    kids[i] = new
    return _rebuild(x, kids), red, con


def step(x, p: Position):
    """Contract the reduct at ``p``; all other structure is unchanged."""
    return _step(x, tuple(p), frozenset(x.free))[0]


def step_verbose(x, p: Position):
    return _step(x, tuple(p), frozenset(x.free))


# -- strategies and traces -------------------------------------------------

class Status(str, enum.Enum):
    NORMAL = "Normal"
    FUEL_EXHAUSTED = "FuelExhausted"


@dataclass(frozen=True)
class Step:
    position: Position
    redex: Formula
    contractum: Formula


@dataclass
class RewriteTrace:
    source: object
    steps: list = field(default_factory=list)
    result: object = None
    status: Status = Status.NORMAL

    def replay(self):
        x = self.source
        for s in self.steps:
            x = step(x, s.position)
        return x

    def jsonl(self) -> Iterator[str]:
        from .syntax import show

        yield json.dumps({"source": show(self.source)})
        for s in self.steps:
            yield json.dumps(
                {"pos": list(s.position), "redex": show(s.redex), "contractum": show(s.contractum)}
            )
        yield json.dumps(
            {"result": show(self.result), "status": self.status.value, "steps": len(self.steps)}
        )


def _innermost(x, ps):
    for p in ps:
        if not any(len(q) > len(p) and q[: len(p)] == p for q in ps):
            return p
    raise AssertionError("unreachable")


def _picker(strategy: str, seed: Optional[int]):
    if strategy == "outermost":
        return lambda x, ps: ps[0]
    if strategy == "innermost":
        return _innermost
    if strategy == "random":
        rng = random.Random(seed)
        return lambda x, ps: rng.choice(ps)
    raise ValueError(f"unknown strategy {strategy!r}")


def guaranteed_terminating(x) -> bool:
    """Stratified (leveled) or stratifiable (unleveled) input."""
    if _leveled(x):
        return not check_stratified(x)
    return not isinstance(infer_levels(erase_levels(x)), Cycle) and _all_unleveled(x)


def _all_unleveled(x) -> bool:
    return erase_levels(x) == x


def bigstep(x):
    if _leveled(x):
        return embed(interpret(x))
    if not _all_unleveled(x):
        raise StratificationRequired("bigstep needs leveled or fully unleveled syntax")
    sol = infer_levels(x)
    if isinstance(sol, Cycle):
        raise StratificationRequired("input is not stratifiable")
    return erase_levels(embed(interpret(sol.annotate(x))))


def normalize(x, strategy: str = "bigstep", fuel: Optional[int] = None,
              seed: Optional[int] = None) -> RewriteTrace:
    if strategy.startswith("random(") and strategy.endswith(")"):
        strategy, seed = "random", int(strategy[7:-1])
    if strategy == "bigstep":
        return RewriteTrace(x, [], bigstep(x), Status.NORMAL)
    if fuel is None and not guaranteed_terminating(x):
        raise StratificationRequired("unstratifiable input needs a fuel bound")
    pick = _picker(strategy, seed)
    trace = RewriteTrace(x)
    cur = x
    while True:
        ps = redex_positions(cur)
        if not ps:
            trace.status = Status.NORMAL
            break
        if fuel is not None and len(trace.steps) >= fuel:
            trace.status = Status.FUEL_EXHAUSTED
            break
        p = pick(cur, ps)
        cur, red, con = step_verbose(cur, p)
        trace.steps.append(Step(p, red, con))
    trace.result = cur
    return trace


def surface_normal_form(x):
    """Normal form by hereditary substitution on surface syntax.

    Unlike ``embed(interpret(x))`` it keeps duplicate and unordered
    conjuncts, so it is literally the formula every reduction ends in.
    """
    return _nf(x, frozenset(x.free))


def _nf(x, avoid):
    match x:
        case Bot() | Var():
            return x
        case Neg(b):
            return Neg(_nf(b, avoid))
        case And(l, r):
            return And(_nf(l, avoid), _nf(r, avoid))
        case All(lv, _, h) | Comp(lv, _, h):
            a = _open_atom(lv, h, avoid)
            return _rebuild(x, [abstract(_nf(x.open(a), avoid | {a}), a)])
        case In(t, s):
            t2, s2 = _nf(t, avoid), _nf(s, avoid)
            if isinstance(s2, Comp):
                return _nf(instantiate(s2.body, t2), avoid)
            return In(t2, s2)
    raise TypeError(x)
