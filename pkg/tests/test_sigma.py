import random

import pytest
from hypothesis import given, settings, strategies as st

from stratal import internal as I
from stratal.errors import LevelMismatch
from stratal.generate import InternalGen
from stratal.nominal import Atom, Bound
from stratal.normalize import embed, surface_normal_form
from stratal.props import SIGMA_LAWS, sigma_suite
from stratal.sigma import sigma, sigma_pred, sigma_set, tin
from stratal import surface as S

a0, b0, c0 = (Atom.named(n, 0) for n in "abc")
a1, b1, n1 = Atom.named("a", 1), Atom.named("b", 1), Atom.named("n", 1)


def test_gc_on_false():
    assert sigma_pred(I.FALSE, a1, I.emptyset(1)) == I.FALSE


def test_membership_into_emptyset():
    assert sigma_pred(I.Elt(I.Atm(b0), a1), a1, I.emptyset(1)) == I.FALSE


def test_membership_into_atom():
    y = I.Atm(b0)
    assert sigma_pred(I.Elt(y, a1), a1, I.Atm(n1)) == I.Elt(sigma_set(y, a1, I.Atm(n1)), n1)


def test_membership_into_comprehension():
    # (b ∈ a)[a ↦ {c | c ∈ q}] = b ∈ q
    q = Atom.named("q", 1)
    x = I.st(c0, I.Elt(I.Atm(c0), q))
    assert sigma_pred(I.Elt(I.Atm(b0), a1), a1, x) == I.Elt(I.Atm(b0), q)


def test_set_rules():
    x = I.Atm(b0)
    assert sigma_set(I.Atm(a0), a0, x) == x
    assert sigma_set(I.Atm(c0), a0, x) == I.Atm(c0)
    body = I.Elt(I.Atm(a0), b1)
    z = I.st(c0, body)
    assert sigma_set(z, a0, x) == I.st(c0, sigma_pred(body, a0, x))


def test_level_mismatch():
    with pytest.raises(LevelMismatch):
        sigma_pred(I.TRUE, a0, I.Atm(b1))


def test_tin():
    y = I.Atm(b0)
    assert tin(y, I.Atm(a1)) == I.Elt(y, a1)
    assert tin(y, I.emptyset(1)) == I.FALSE
    assert tin(y, I.fullset(1)) == I.TRUE


def test_law_suite_small():
    for r in sigma_suite(cases=60, seed=7):
        assert r.ok, r.line()
    assert {r.name for r in sigma_suite(cases=1)} == set(SIGMA_LAWS)


# Independent oracle: substitute on surface syntax, normalise by hereditary
# substitution (no sigma involved), then read the redex-free result back.

def _read_back(f):
    match f:
        case S.Bot():
            return I.FALSE
        case S.Neg(b):
            return I.Neg(_read_back(b))
        case S.And(l, r):
            return I.And((_read_back(l), _read_back(r)))
        case S.All(lv, b, h):
            return I.All(lv, _read_back(b), h)
        case S.In(t, S.Var(n)):
            return I.Elt(_read_back(t), n)
        case S.Var(n):
            return I.Atm(n)
        case S.Comp(lv, b, h):
            return I.St(lv, _read_back(b), h)
    raise AssertionError(f"redex left in normal form: {f}")


def _flat(x):
    # And is a set in internal syntax; flatten nested binary conjunctions.
    # embed sends both ~false and true to ~⊥ and drops singleton
    # conjunctions, so identify those too.
    match x:
        case I.Neg(I.Neg(I.And(()))):
            return I.TRUE
        case I.And(ms):
            out = []
            for m in map(_flat, ms):
                out.extend(m.members if isinstance(m, I.And) else [m])
            out = I.And(tuple(out))
            return out.members[0] if len(out.members) == 1 else out
        case I.Neg(b):
            b = _flat(b)
            return I.TRUE if b == I.FALSE else I.Neg(b)
        case I.All(lv, b, h):
            return I.All(lv, _flat(b), h)
        case I.St(lv, b, h):
            return I.St(lv, _flat(b), h)
        case I.Elt(s, n):
            return I.Elt(_flat(s), n)
    return x


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_sigma_matches_surface_oracle(seed):
    rng = random.Random(seed)
    pool = [Atom.named(n, lv) for n in "pq" for lv in range(-1, 5)]
    g = InternalGen(rng, free_atoms=pool)
    Z = g.pred(rng.randint(1, 12))
    a = rng.choice([p for p in pool if 0 <= p.level <= 3])
    x = g.set(a.level, rng.randint(1, 8))
    expect = _read_back(surface_normal_form(S.subst(embed(Z), a, embed(x))))
    assert _flat(sigma(Z, a, x)) == _flat(expect)


def test_bound_is_not_touched():
    body = I.Elt(I.Atm(Bound(0, 0)), a1)
    z = I.St(0, body)
    assert sigma_set(z, a0, I.Atm(b0)) == z
