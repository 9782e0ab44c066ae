"""The sigma-action ``Z[a ↦ x]`` on internal syntax, and the sugar ``y t∈ x``.

The membership-into-comprehension case recurses on a body that need not be
smaller than its input.  It is well founded on ``(level of the substituted
atom, age)`` because levels never drop below the minimum level of the
original call; that floor is threaded through and asserted.
"""

from __future__ import annotations

from .errors import KindError, LevelMismatch
from .internal import (
    All, And, Atm, Elt, IPred, ISet, Neg, St, abstract, level, minlev,
)
from .nominal import Atom, fresh


def _check(a: Atom, x: ISet):
    lx = level(x)
    if lx != a.level:
        raise LevelMismatch(f"cannot substitute a level-{lx} set for {a!r}")


def sigma_pred(Z: IPred, a: Atom, x: ISet) -> IPred:
    _check(a, x)
    return _pred(Z, a, x, minlev(Z, a, x))


def sigma_set(z: ISet, a: Atom, x: ISet) -> ISet:
    _check(a, x)
    return _set(z, a, x, minlev(z, a, x))


def sigma(v, a: Atom, x: ISet):
    """Dispatch on predicate vs set."""
    if isinstance(v, ISet):
        return sigma_set(v, a, x)
    return sigma_pred(v, a, x)


def _binder(lv, *avoid_from, extra=()):
    seen = set(extra)
    for v in avoid_from:
        seen |= v.free
    return fresh(lv, seen)


def _pred(Z, a, x, floor):
    match Z:
        case And(ms):
            return And(tuple(_pred(m, a, x, floor) for m in ms))
        case Neg(b):
            return Neg(_pred(b, a, x, floor))
        case All(lv, _, h):
            b = _binder(lv, Z, x, extra=(a,))
            return All(lv, abstract(_pred(Z.open(b), a, x, floor), b), h)
        case Elt(y, n) if n == a:
            y2 = _set(y, a, x, floor)
            if isinstance(x, Atm):
                return Elt(y2, x.name)
            # x = {a'|X'}: continue with X'[a' ↦ y[a ↦ x]] at a lower level
            a1 = _binder(x.level, x, y, extra=(a,))
            assert a1.level < a.level and a1.level >= floor, "sigma measure failed to decrease"
            return _pred(x.open(a1), a1, y2, floor)
        case Elt(y, n):
            return Elt(_set(y, a, x, floor), n)
    raise KindError(f"not an internal predicate: {Z!r}")


def _set(z, a, x, floor):
    match z:
        case Atm(n):
            return x if n == a else z
        case St(lv, _, h):
            c = _binder(lv, z, x, extra=(a,))
            return St(lv, abstract(_pred(z.open(c), a, x, floor), c), h)
    raise KindError(f"not an internal set: {z!r}")


def tin(y: ISet, x: ISet) -> IPred:
    """``y t∈ x``: membership with an arbitrary internal set on the right."""
    ly, lx = level(y), level(x)
    if ly is not None and lx is not None and lx != ly + 1:
        raise LevelMismatch(f"level-{ly} set cannot be a member of a level-{lx} set")
    if isinstance(x, Atm):
        return Elt(y, x.name)
    b = _binder(x.level, x, y)
    return sigma_pred(x.open(b), b, y)
