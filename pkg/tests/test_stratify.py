import random

from hypothesis import given, settings, strategies as st

from stratal.generate import generate
from stratal.props import _random_unleveled, brute_force_stratifiable
from stratal.stratify import (
    BadMembership, Cycle, Site, check_stratified, erase_levels, infer_levels,
)
from stratal.syntax import parse, show


def test_check_examples():
    assert check_stratified(parse("a:2 in b:3")) == []
    assert check_stratified(parse("b:3 in c:4")) == []
    [bad] = check_stratified(parse("a:2 in c:4"))
    assert isinstance(bad, BadMembership)
    assert (bad.set_level, bad.elem_level) == (4, 2)


def test_comprehension_level():
    assert check_stratified(parse("{a:1 | false} in b:3")) == []
    [bad] = check_stratified(parse("{a:1 | false} in b:2"))
    assert bad.elem_level == 2 and bad.set_level == 2


def test_violation_json():
    [bad] = check_stratified(parse("a:2 in c:4"))
    j = bad.to_json()
    assert j["kind"] == "BadMembership" and j["required_set_level"] == 3


def test_infer_simple():
    x = parse("a in b", "nf")
    sol = infer_levels(x)
    assert show(sol.annotate(x)) == "a:0 in b:1"


def test_infer_russell():
    sol = infer_levels(parse("{a | ~(a in a)}", "nf"))
    assert isinstance(sol, Cycle)
    assert sol.replays() and sol.net_offset != 0
    assert sol.to_json()["kind"] == "Cycle"


def test_infer_top():
    x = parse("{a | true}", "nf")
    sol = infer_levels(x)
    assert show(sol.annotate(x)) == "{a:0 | ~false}"
    assert sol.level(Site.binder((), "a")) == 0


def test_canonical_minimum_zero():
    x = parse("a in b & c in d", "nf")
    sol = infer_levels(x)
    assert len(sol.shift_classes) == 2
    for cls in sol.shift_classes:
        assert min(sol.assignment[s] for s in cls) == 0


def test_shift_preserves_validity():
    x = parse("a in b & {z | z in a} in c", "nf")
    sol = infer_levels(x)
    for k in (-5, 3):
        assert check_stratified(sol.shifted(0, k).annotate(x)) == []


def test_erase_round_trip():
    x = parse("forall y:0. y:0 in {z:1 | false}")
    assert erase_levels(x) == parse("forall y. y in {z | false}", "nf")


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_generated_nf_infers(seed):
    x = generate(seed, 20, "nf")
    sol = infer_levels(x)
    assert not isinstance(sol, Cycle)
    assert check_stratified(sol.annotate(x)) == []


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_agrees_with_brute_force(seed):
    rng = random.Random(seed)
    x = _random_unleveled(rng, rng.randint(1, 10))
    sol = infer_levels(x)
    assert (not isinstance(sol, Cycle)) == brute_force_stratifiable(x)
    if isinstance(sol, Cycle):
        assert sol.replays()


def test_brute_force_small_cases():
    assert brute_force_stratifiable(parse("a in b", "nf"))
    assert not brute_force_stratifiable(parse("a in a", "nf"))
    assert not brute_force_stratifiable(parse("a in b & b in a", "nf"))
    assert brute_force_stratifiable(parse("{a | true}", "nf"))
