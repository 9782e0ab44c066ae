import pytest

from stratal.generate import generate, generate_term, isize, InternalGen
from stratal import internal as I
from stratal.stratify import Cycle, check_stratified, infer_levels
from stratal.surface import Bot, level_of, size

import random


def test_size_one_is_false():
    assert all(generate(s, 1) == Bot() for s in range(20))


def test_deterministic():
    assert generate(42, 20) == generate(42, 20)
    assert generate(42, 20, "nf") == generate(42, 20, "nf")


def test_tst_sound():
    for s in range(500):
        x = generate(s, 20)
        assert size(x) <= 20
        assert check_stratified(x) == []


def test_nf_sound():
    for s in range(500):
        assert not isinstance(infer_levels(generate(s, 20, "nf")), Cycle)


def test_exact_size_and_term_level():
    for s in range(50):
        assert size(generate(s, 12, exact=True)) == 12
        t = generate_term(s, 9, 2, exact=True)
        assert size(t) == 9 and level_of(t) == 2


def test_internal_generator_well_formed():
    for s in range(200):
        g = InternalGen(random.Random(s))
        x = g.pred(10)
        assert isize(x) <= 10 and I.well_formed(x)


def test_bad_size():
    with pytest.raises(ValueError):
        generate(0, 0)
