"""Acceptance criteria, one pass/fail line each.

Run ``pytest tests/test_acceptance.py`` (lines are printed even under
capture) or ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from functools import lru_cache

import pytest

from stratal.measures import atomic, complexity
from stratal.generate import SurfaceGen, generate
from stratal.nominal import Atom, Bound
from stratal.normalize import Status, embed, interpret, normalize, redex_positions, step
from stratal.props import (
    brute_force_stratifiable, confluence_suite, interpretation_suite, sigma_suite,
    stratify_suite, termination_suite,
)
from stratal.stratify import Cycle, check_stratified, infer_levels
from stratal.surface import All, And, Bot, Comp, In, Neg, Var, size
from stratal.syntax import parse

LINES: list[str] = []


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
        LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok
    return emit


def _summary(results):
    return "; ".join(f"{r.name} {r.cases - r.failures}/{r.cases}" for r in results)


def test_1_sigma_laws(report):
    laws = ("sigma-alpha", "sigma-gc", "sigma-sigma", "sigma-swp", "sigma-asc",
            "sigma-id", "sigma-ren", "sigma-at")
    t = time.perf_counter()
    rs = sigma_suite(cases=500, max_size=15, seed=1, laws=laws)
    dt = time.perf_counter() - t
    ok = all(r.ok and r.cases >= 500 for r in rs) and dt < 30
    assert report(1, ok, f"{_summary(rs)}; {dt:.1f}s"), [r.examples for r in rs if not r.ok]


def test_2_interpretation(report):
    rs = interpretation_suite(cases=500, max_size=20, seed=2)
    rs = [r for r in rs if r.name in ("interp-subst", "interp-reduct")]
    assert report(2, all(r.ok for r in rs), _summary(rs))


def test_3_normal_form(report):
    bad = 0
    for seed in range(500):
        phi = generate(seed, 20)
        bad += bool(redex_positions(embed(interpret(phi))))
    assert report(3, bad == 0, f"{500 - bad}/500 redex-free")


def _confluence(n, mode, report):
    t = time.perf_counter()
    rs = confluence_suite(cases=300, max_size=25, seed=4, mode=mode)
    dt = time.perf_counter() - t
    interp, alpha = rs
    ok = interp.ok and interp.cases >= 300 and dt < 120
    detail = (f"{interp.name} {interp.cases - interp.failures}/{interp.cases}; "
              f"alpha-equal across strategies {alpha.cases - alpha.failures}/{alpha.cases}; "
              f"alpha-unequal to embed(interpret) {alpha.notes['alpha_ne_embed_interp']}; "
              f"alpha-unequal to surface normal form {alpha.notes['alpha_ne_surface_nf']}; "
              f"{dt:.1f}s")
    assert report(n, ok, detail), interp.examples


def test_4_confluence(report):
    _confluence(4, "tst", report)


def test_5_confluence_nf(report):
    _confluence(5, "nf", report)


def test_6_termination(report):
    rs = termination_suite(cases=300, max_size=20, seed=6)
    extra = f"; {rs[-1].notes['steps']} steps"
    assert report(6, all(r.ok for r in rs), _summary(rs) + extra)


def test_7_measure_identities(report):
    n = 500
    identity = bounds = 0
    for seed in range(n):
        rng = random.Random(seed)
        g = SurfaceGen(rng)
        phi = generate(seed, 25)
        identity += size(phi) == complexity(phi) + 2 * atomic(phi)
        t = g.term(rng.choice((0, 1, 2)), rng.randint(1, 12))
        c_ok = complexity(t) >= (4 if isinstance(t, Comp) else 1)
        bounds += complexity(phi) >= 3 and c_ok
    bot = complexity(Bot()) == 3
    ok = identity == n and bounds == n and bot
    detail = (f"size = complexity + 2*atomic on {identity}/{n}; "
              f"complexity(false) = 3: {bot}; lower bounds {bounds}/{n}")
    assert report(7, ok, detail)


NAMES = (Atom.named("p"), Atom.named("q"))


@lru_cache(None)
def _formulas(n, depth):
    if n == 1:
        return (Bot(),)
    out = [Neg(f) for f in _formulas(n - 1, depth)]
    out += [All(None, f, "x") for f in _formulas(n - 1, depth + 1)]
    for k in range(1, n - 1):
        out += [And(l, r) for l in _formulas(k, depth) for r in _formulas(n - 1 - k, depth)]
        out += [In(s, t) for s in _terms(k, depth) for t in _terms(n - 1 - k, depth)]
    return tuple(out)


@lru_cache(None)
def _terms(n, depth):
    if n == 1:
        return tuple(Var(a) for a in NAMES) + tuple(Var(Bound(i, None)) for i in range(depth))
    return tuple(Comp(None, f, "a") for f in _formulas(n - 1, depth + 1))


def test_8_stratifiability_oracle(report):
    total = agree = 0
    for n in range(1, 8):
        for f in _formulas(n, 0):
            total += 1
            agree += (not isinstance(infer_levels(f), Cycle)) == brute_force_stratifiable(f)
    rs = stratify_suite(cases=500, max_size=10, seed=8)
    ok = agree == total and all(r.ok for r in rs)
    assert report(8, ok, f"exhaustive size<=7 {agree}/{total}; random {_summary(rs)}")


def test_9_named_examples(report):
    checks = {}
    checks["Russell rejected with Cycle"] = (
        isinstance(w := infer_levels(parse("{a | ~(a in a)}", "nf")), Cycle) and w.replays()
    )
    top = parse("{a | true}", "nf")
    sol = infer_levels(top)
    checks["{a|true} accepted"] = (
        not isinstance(sol, Cycle) and check_stratified(sol.annotate(top)) == []
    )
    empty = "{b:0 | false}"
    src = parse(f"{empty} in {{a:1 | ~(a:1 in a:1)}}", "raw")
    tr = normalize(src, "outermost", fuel=1)
    checks["empty in Russell steps to empty notin empty"] = (
        redex_positions(src) == [()]
        and len(tr.steps) == 1
        and step(src, ()) == parse(f"~({empty} in {empty})", "raw")
    )
    omega = parse("{a | a in a} in {a | a in a}", "raw")
    checks["omega in omega exhausts fuel"] = (
        normalize(omega, "outermost", fuel=100).status is Status.FUEL_EXHAUSTED
    )
    ok = all(checks.values())
    assert report(9, ok, "; ".join(f"{k}: {v}" for k, v in checks.items()))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
