import pytest

from stratal.errors import LevelMismatch
from stratal.nominal import Atom
from stratal.surface import (
    All, And, Bot, Comp, In, Neg, Var, alpha_eq, comp, count_bound, desugar,
    exists, forall, is_core, or_, size, subst, top,
)
from stratal.syntax import parse

a, b, c = (Atom.named(n) for n in "abc")
va, vb, vc = Var(a), Var(b), Var(c)
E = comp(b, Bot())


def test_alpha_rename_bound():
    assert alpha_eq(forall(a, In(va, vc)), forall(b, In(vb, vc)))


def test_alpha_free_differ():
    assert not alpha_eq(In(va, vc), In(vb, vc))


def test_alpha_self_membership():
    assert alpha_eq(comp(a, In(va, va)), comp(b, In(vb, vb)))


def test_subst_leaf():
    assert subst(In(va, vb), a, vc) == In(vc, vb)


def test_subst_shielded():
    phi = forall(a, In(va, vb))
    assert subst(phi, a, comp(c, Bot())) == phi


def test_subst_contraction_example():
    assert subst(Neg(In(va, va)), a, E) == Neg(In(E, E))


def test_subst_capture_avoiding():
    # substituting b into ∀a.(x∈a) with x free must not capture
    x = Atom.named("x")
    phi = forall(a, In(Var(x), va))
    got = subst(phi, x, va)
    assert got.free == {a}
    assert isinstance(got, All) and got.body == In(va, Var(got.body.set.name))


def test_subst_level_mismatch():
    with pytest.raises(LevelMismatch):
        subst(In(Var(Atom.named("a", 0)), Var(Atom.named("b", 1))), Atom.named("a", 0),
              Var(Atom.named("c", 2)))


def test_size():
    assert size(va) == 1
    assert size(In(vb, va)) == 3
    assert size(comp(a, Bot())) == 2


def test_sugar():
    phi, psi = In(va, vb), In(vb, vc)
    assert or_(phi, psi) == Neg(And(Neg(phi), Neg(psi)))
    assert top() == Neg(Bot())
    assert exists(c, phi) == Neg(forall(c, Neg(phi)))
    assert desugar("or", phi, psi) == or_(phi, psi)
    assert is_core(desugar("iff", phi, psi))


def test_count_bound_shadowing():
    body = And(In(va, vb), forall(a, In(va, vb)))
    assert count_bound(comp(a, body).body) == 1


def test_nodes_hashable_and_alpha_keyed():
    assert len({forall(a, In(va, vc)), forall(b, In(vb, vc))}) == 1


def test_comp_binder_level():
    t = parse("{a:0 | a:0 in b:1}")
    assert isinstance(t, Comp) and t.level == 0
