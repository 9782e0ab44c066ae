import pytest

from stratal import internal as I
from stratal.errors import FreshnessViolation, KindError, LevelMismatch
from stratal.nominal import Atom, Bound, Permutation
from stratal.syntax import show

a0, b0, c0 = (Atom.named(n, 0) for n in "abc")
a1, b1, a2, b2, a3 = (Atom.named("a", 1), Atom.named("b", 1), Atom.named("a", 2),
                      Atom.named("b", 2), Atom.named("a", 3))


def test_mk_elt():
    x = I.Atm(a1)
    assert I.mk("Elt", x, a2) == I.Elt(x, a2)
    with pytest.raises(LevelMismatch):
        I.mk("Elt", x, a3)


def test_and_is_a_set():
    X = I.Elt(I.Atm(a0), b1)
    Y = I.Elt(I.Atm(c0), b1)
    assert I.mk("And", [X, X]) == I.And((X,))
    assert I.And((X, Y)) == I.And((Y, X))


def test_age():
    assert I.age(I.Atm(a0)) == 0
    assert I.age(I.TRUE) == 1
    assert I.age(I.st(a0, I.TRUE)) == 2


def test_minlev():
    assert I.minlev(I.Atm(a3)) == 3
    assert I.minlev(I.TRUE) == 0
    assert I.minlev(I.Elt(I.Atm(a1), b2)) == 1


def test_concrete():
    z = I.st(a0, I.Elt(I.Atm(a0), b1))
    assert I.concrete(z, a0) == I.Elt(I.Atm(a0), b1)
    assert I.concrete(z, c0) == I.permute(Permutation.swap(c0, a0), I.Elt(I.Atm(a0), b1))


def test_concrete_of_emptyset():
    assert I.concrete(I.emptyset(1), a0) == I.FALSE


def test_concrete_errors():
    with pytest.raises(KindError):
        I.concrete(I.Atm(a1), a0)
    with pytest.raises(LevelMismatch):
        I.concrete(I.emptyset(1), a1)
    with pytest.raises(FreshnessViolation):
        I.concrete(I.st(c0, I.Elt(I.Atm(a0), b1)), a0)


def test_sugar():
    X, Y = I.Elt(I.Atm(a0), b1), I.Elt(I.Atm(c0), b1)
    assert I.FALSE == I.Neg(I.And(()))
    assert I.emptyset(1) == I.St(0, I.FALSE)
    assert I.iff(X, Y) == I.And((I.imp(X, Y), I.imp(Y, X)))
    assert I.internal_sugar("or", X, Y) == I.or_((X, Y))


def test_print():
    assert show(I.FALSE) == "false"
    X, Y = I.Elt(I.Atm(a0), b1), I.Elt(I.Atm(c0), b1)
    assert show(I.And((Y, X))) == show(I.And((X, Y)))
    assert " & " in show(I.And((X, Y)))


def test_well_formed():
    assert I.well_formed(I.st(a0, I.Elt(I.Atm(a0), b1)))
    assert not I.well_formed(I.St(0, I.Elt(I.Atm(Bound(1, 0)), b1)))


def test_json_round_trip():
    x = I.st(a0, I.And((I.Elt(I.Atm(a0), b1), I.Neg(I.all_(c0, I.Elt(I.Atm(c0), b1))))))
    assert I.from_json(I.to_json(x)) == x
