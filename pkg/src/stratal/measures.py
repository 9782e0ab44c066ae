"""Termination bookkeeping for the rewrite system.

``complexity`` is size with atomic reducts ``b ∈ {a|φ}`` skipped;
``atomic`` counts those reducts.  On ternary formulae (every comprehension
binder occurs free at least three times) each rewrite either raises
complexity or keeps it and removes one atomic reduct, which together with
the complexity of the normal form as an upper bound gives a terminating
lexicographic measure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import MeasureUnderflow
from .nominal import fresh
from .surface import (
    All, And, Bot, Comp, In, Neg, Var, abstract, count_bound, exists,
)

TERNARY = 3


def _is_atom(t) -> bool:
    return isinstance(t, Var)


def complexity(x) -> int:
    match x:
        case Var():
            return 1
        case Comp(_, b):
            return 1 + complexity(b)
        case Bot():
            return 3
        case And(l, r):
            return complexity(l) + 1 + complexity(r)
        case Neg(b) | All(_, b):
            return 1 + complexity(b)
        case In(t, Comp(_, b)) if _is_atom(t):
            return complexity(b)
        case In(t, s):
            return complexity(t) + 1 + complexity(s)
    raise TypeError(x)


def atomic(x) -> int:
    match x:
        case Var() | Bot():
            return 0
        case Comp(_, b) | Neg(b) | All(_, b):
            return atomic(b)
        case And(l, r):
            return atomic(l) + atomic(r)
        case In(t, Var()):
            return atomic(t)
        case In(t, Comp(_, b)) if _is_atom(t):
            return atomic(b) + 1
        case In(t, s):
            return atomic(t) + atomic(s)
    raise TypeError(x)


def _children(x):
    match x:
        case Bot() | Var():
            return ()
        case Neg(b) | All(_, b) | Comp(_, b):
            return (b,)
        case And(l, r) | In(l, r):
            return (l, r)
    raise TypeError(x)


def ternary_status(x) -> list[tuple]:
    """Positions of non-ternary comprehensions; empty means the value is ternary."""
    out = []

    def walk(x, pos):
        if isinstance(x, Comp) and count_bound(x.body) < TERNARY:
            out.append(pos)
        for i, k in enumerate(_children(x)):
            walk(k, pos + (i,))

    walk(x, ())
    return out


def is_ternary(x) -> bool:
    return not ternary_status(x)


def na_pad(x):
    """Pad every non-ternary ``{a|φ}`` to ``{a | φ ∧ ∃c.(a∈c ∧ a∈c ∧ a∈c)}``."""
    return _pad(x, frozenset(x.free))


def _pad(x, avoid):
    match x:
        case Bot() | Var():
            return x
        case Neg(b):
            return Neg(_pad(b, avoid))
        case And(l, r):
            return And(_pad(l, avoid), _pad(r, avoid))
        case In(t, s):
            return In(_pad(t, avoid), _pad(s, avoid))
        case All(lv, b, h):
            a = fresh(lv, avoid)
            return All(lv, abstract(_pad(x.open(a), avoid | {a}), a), h)
        case Comp(lv, b, h):
            a = fresh(lv, avoid)
            body = _pad(x.open(a), avoid | {a})
            if count_bound(b) < TERNARY:
                c_level = None if lv is None else lv + 1
                c = fresh(c_level, avoid | {a})
                m = In(Var(a), Var(c))
                body = And(body, exists(c, And(m, And(m, m))))
            return Comp(lv, abstract(body, a), h)
    raise TypeError(x)


def unpad(x):
    """Erase padding conjuncts introduced by :func:`na_pad`."""
    match x:
        case Bot() | Var():
            return x
        case Neg(b):
            return Neg(unpad(b))
        case And(l, r):
            return And(unpad(l), unpad(r))
        case In(t, s):
            return In(unpad(t), unpad(s))
        case All(lv, b, h):
            return All(lv, unpad(b), h)
        case Comp(lv, And(body, pad), h) if _is_padding(pad):
            return Comp(lv, unpad(body), h)
        case Comp(lv, b, h):
            return Comp(lv, unpad(b), h)
    raise TypeError(x)


def _is_padding(f) -> bool:
    # ¬∀c.¬(#1∈#0 ∧ (#1∈#0 ∧ #1∈#0)), seen from the comprehension body
    match f:
        case Neg(All(_, Neg(And(m1, And(m2, m3))))):
            return (
                m1 == m2 == m3
                and isinstance(m1, In)
                and isinstance(m1.elem, Var)
                and isinstance(m1.set, Var)
                and getattr(m1.elem.name, "index", None) == 1
                and getattr(m1.set.name, "index", None) == 0
            )
    return False


@dataclass(frozen=True, order=True)
class TerminationMeasure:
    complexity_gap: int
    atomic: int


def termination_measure(current, source, bound: Optional[int] = None) -> TerminationMeasure:
    """``(complexity(nf) - complexity(current), atomic(current))``.

    ``nf`` is the surface normal form of ``source`` unless ``bound`` (its
    complexity) is supplied.
    """
    if bound is None:
        from .normalize import surface_normal_form

        bound = complexity(surface_normal_form(source))
    gap = bound - complexity(current)
    if gap < 0:
        raise MeasureUnderflow(
            f"complexity {complexity(current)} exceeds normal-form bound {bound}"
        )
    return TerminationMeasure(gap, atomic(current))


def step_case(before, after) -> Optional[str]:
    """Which monotonicity case a single rewrite falls in, if any exactly one."""
    cb, ca = complexity(before), complexity(after)
    up = cb < ca
    down = cb == ca and atomic(before) > atomic(after)
    if up and not down:
        return "complexity increases"
    if down and not up:
        return "atomic reducts decrease"
    return None


def report(x) -> dict:
    from .surface import size

    return {
        "size": size(x),
        "complexity": complexity(x),
        "atomic": atomic(x),
        "ternary": is_ternary(x),
    }
