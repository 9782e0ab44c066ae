"""Seeded property suites checking the algebraic laws at desk scale.

Each suite returns a list of :class:`LawResult`; ``ok`` is true when every
law held on every case.  Used by the ``prop`` CLI subcommand and the tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import internal as I
from .generate import InternalGen, SurfaceGen, generate
from .measures import (
    complexity, is_ternary, na_pad, step_case, termination_measure,
)
from .nominal import Atom, Bound, Permutation, fresh
from .normalize import (
    RewriteTrace, embed, interpret, normalize, redex_positions, step,
    surface_normal_form,
)
from .sigma import sigma, sigma_pred, tin
from .stratify import Cycle, check_stratified, erase_levels, infer_levels
from .surface import All, And, Bot, Comp, In, Neg, Var, comp, subst


@dataclass
class LawResult:
    name: str
    cases: int = 0
    failures: int = 0
    examples: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.cases > 0

    def record(self, passed: bool, example=None):
        self.cases += 1
        if not passed:
            self.failures += 1
            if len(self.examples) < 3:
                self.examples.append(example)

    def line(self) -> str:
        flag = "PASS" if self.ok else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in self.notes.items())
        return f"{flag} {self.name}: {self.cases - self.failures}/{self.cases}{extra}"

    def to_json(self):
        return {
            "law": self.name, "ok": self.ok, "cases": self.cases,
            "failures": self.failures, "notes": self.notes,
            "examples": [str(e) for e in self.examples],
        }


def _seed(*parts) -> int:
    # str seeding is stable across processes, unlike hash()
    return random.Random(":".join(map(str, parts))).getrandbits(32)


# -- sigma laws ------------------------------------------------------------

def _free_pool():
    return [Atom.named(n, lv) for n in ("p", "q", "r") for lv in range(-1, 5)]


def _pick(rng, pool, lv, avoid=()):
    cands = [a for a in pool if a.level == lv and a not in avoid]
    return rng.choice(cands)


class _Draw:
    def __init__(self, rng, max_size):
        self.rng = rng
        self.max_size = max_size
        self.pool = _free_pool()
        self.gen = InternalGen(rng, free_atoms=self.pool)

    def size(self, cap=None):
        return self.rng.randint(1, cap or self.max_size)

    def pred(self, avoid=()):
        gen = InternalGen(self.rng, free_atoms=[a for a in self.pool if a not in avoid])
        return gen.pred(self.size())

    def set(self, lv, avoid=(), cap=None):
        gen = InternalGen(self.rng, free_atoms=[a for a in self.pool if a not in avoid])
        return gen.set(lv, self.size(cap))

    def comp(self, lv, avoid=()):
        gen = InternalGen(self.rng, free_atoms=[a for a in self.pool if a not in avoid])
        return gen.set(lv, max(2, self.size()))

    def atom(self, lv=None, avoid=()):
        if lv is None:
            lv = self.rng.choice((0, 1, 2, 3))
        return _pick(self.rng, self.pool, lv, avoid)

    def fresh_for(self, lv, *xs):
        seen = set()
        for x in xs:
            seen |= x.free
        return fresh(lv, seen)


def _minlev_ok(Z, a, x):
    return I.minlev(sigma_pred(Z, a, x)) >= I.minlev(Z, a, x)


SIGMA_LAWS = (
    "sigma-alpha", "sigma-gc", "sigma-sigma", "sigma-swp", "sigma-asc",
    "sigma-id", "sigma-ren", "sigma-at", "support-bound", "minlev-bound",
    "tin-distrib", "tin-eta",
)


def sigma_suite(cases: int = 500, max_size: int = 15, seed: int = 0,
                laws=SIGMA_LAWS) -> list[LawResult]:
    results = {name: LawResult(name) for name in laws}
    for i in range(cases):
        rng = random.Random(f"{seed}:{i}")
        d = _Draw(rng, max_size)
        for name in laws:
            ok, ex = _SIGMA_CHECKS[name](d)
            results[name].record(ok, ex)
    return list(results.values())


def _law_alpha(d):
    Z = d.pred()
    a = d.atom()
    x = d.set(a.level)
    a1 = d.fresh_for(a.level, Z, I.Atm(a))
    lhs = sigma_pred(Z, a, x)
    rhs = sigma_pred(I.permute(Permutation.swap(a1, a), Z), a1, x)
    return lhs == rhs, (Z, a, x, a1)


def _law_gc(d):
    a = d.atom()
    Z = d.pred(avoid=(a,))
    x = d.set(a.level)
    return sigma_pred(Z, a, x) == Z, (Z, a, x)


def _law_sigma_sigma(d):
    a = d.atom()
    b = d.atom(avoid=(a,))
    y = d.set(b.level, avoid=(a,))
    x = d.set(a.level)
    Z = d.pred()
    lhs = sigma_pred(sigma_pred(Z, a, x), b, y)
    rhs = sigma_pred(sigma_pred(Z, b, y), a, sigma(x, b, y))
    return lhs == rhs, (Z, a, x, b, y)


def _law_swp(d):
    a = d.atom()
    b = d.atom(avoid=(a,))
    y = d.set(b.level, avoid=(a,))
    x = d.set(a.level, avoid=(b,))
    Z = d.pred()
    lhs = sigma_pred(sigma_pred(Z, a, x), b, y)
    rhs = sigma_pred(sigma_pred(Z, b, y), a, x)
    return lhs == rhs, (Z, a, x, b, y)


def _law_asc(d):
    a = d.atom()
    b = d.atom(avoid=(a,))
    y = d.set(b.level, avoid=(a,))
    x = d.set(a.level)
    Z = d.pred(avoid=(b,))
    lhs = sigma_pred(Z, a, sigma(x, b, y))
    rhs = sigma_pred(sigma_pred(Z, a, x), b, y)
    return lhs == rhs, (Z, a, x, b, y)


def _law_id(d):
    Z = d.pred()
    a = d.atom()
    return sigma_pred(Z, a, I.Atm(a)) == Z, (Z, a)


def _law_ren(d):
    Z = d.pred()
    a = d.atom()
    a1 = d.fresh_for(a.level, Z, I.Atm(a))
    return sigma_pred(Z, a, I.Atm(a1)) == I.permute(Permutation.swap(a1, a), Z), (Z, a, a1)


def _law_at(d):
    lv = d.rng.choice((1, 2, 3, 4))
    z = d.comp(lv)
    a = d.atom()
    x = d.set(a.level)
    c = d.fresh_for(lv - 1, z, x, I.Atm(a))
    lhs = sigma_pred(I.concrete(z, c), a, x)
    rhs = I.concrete(sigma(z, a, x), c)
    return lhs == rhs, (z, a, x, c)


def _law_support(d):
    Z = d.pred()
    a = d.atom()
    x = d.set(a.level)
    out = sigma_pred(Z, a, x)
    return out.free <= (Z.free - {a}) | x.free, (Z, a, x)


def _law_minlev(d):
    Z = d.pred()
    a = d.atom()
    x = d.set(a.level)
    return _minlev_ok(Z, a, x), (Z, a, x)


def _law_tin_distrib(d):
    lv = d.rng.choice((1, 2, 3))
    x = d.set(lv + 1)
    y = d.set(lv)
    a = d.atom()
    u = d.set(a.level)
    lhs = sigma_pred(tin(y, x), a, u)
    rhs = tin(sigma(y, a, u), sigma(x, a, u))
    return lhs == rhs, (y, x, a, u)


def _law_tin_eta(d):
    k = d.rng.choice((1, 2, 3))
    x = d.set(k)
    y = d.set(k - 1)
    c = d.fresh_for(k, y)
    z = I.st(c, tin(y, I.Atm(c)))
    return tin(x, z) == tin(y, x), (x, y, c)


_SIGMA_CHECKS: dict[str, Callable] = {
    "sigma-alpha": _law_alpha,
    "sigma-gc": _law_gc,
    "sigma-sigma": _law_sigma_sigma,
    "sigma-swp": _law_swp,
    "sigma-asc": _law_asc,
    "sigma-id": _law_id,
    "sigma-ren": _law_ren,
    "sigma-at": _law_at,
    "support-bound": _law_support,
    "minlev-bound": _law_minlev,
    "tin-distrib": _law_tin_distrib,
    "tin-eta": _law_tin_eta,
}


# -- interpretation --------------------------------------------------------

def interpretation_suite(cases: int = 500, max_size: int = 20, seed: int = 0) -> list[LawResult]:
    sub = LawResult("interp-subst")
    red = LawResult("interp-reduct")
    nf = LawResult("interp-normal-form")
    for i in range(cases):
        rng = random.Random(f"interp:{seed}:{i}")
        g = SurfaceGen(rng)
        n = rng.randint(1, max_size)
        phi = g.formula(n)
        # substitution commutes with interpretation
        b_atoms = sorted(phi.free, key=lambda a: (a.level, a.id))
        b = rng.choice(b_atoms) if b_atoms and rng.random() < 0.8 else g.atom(rng.choice((0, 1, 2, 3)))
        t = g.term(b.level, rng.randint(1, max(1, max_size - n // 2)))
        lhs = sigma(interpret(phi), b, interpret(t))
        rhs = interpret(subst(phi, b, t))
        sub.record(lhs == rhs, (phi, b, t))
        # reduct law: [[s ∈ {a|φ}]] = [[φ[a:=s]]]
        lv = rng.choice((0, 1, 2))
        a = fresh(lv, phi.free)
        body = g.formula(rng.randint(1, max(1, max_size // 2)), ())
        body = _mention(rng, body, a, g)
        s = g.term(lv, rng.randint(1, max(1, max_size // 3)))
        red.record(interpret(In(s, comp(a, body))) == interpret(subst(body, a, s)), (s, a, body))
        nf.record(redex_positions(embed(interpret(phi))) == [], phi)
    return [sub, red, nf]


def _mention(rng, body, a, g):
    # conjoin a membership using `a` so the reduct law exercises substitution
    lv = a.level
    if rng.random() < 0.5:
        return And(body, In(Var(a), Var(g.atom(lv + 1))))
    return And(In(Var(g.atom(lv - 1)), Var(a)), body)


# -- confluence ------------------------------------------------------------

STRATEGIES = ("outermost", "innermost", "random")


def confluence_suite(cases: int = 300, max_size: int = 25, seed: int = 0,
                     mode: str = "tst", random_seeds: int = 3) -> list[LawResult]:
    interp = LawResult(f"confluence-interpretation[{mode}]")
    alpha = LawResult(f"confluence-alpha[{mode}]")
    vs_embed = vs_snf = 0
    for i in range(cases):
        phi = generate(_seed("conf", seed, i), max_size, mode)
        leveled = phi
        if mode == "nf":
            sol = infer_levels(phi)
            if isinstance(sol, Cycle):
                interp.record(False, ("not stratifiable", phi))
                continue
            leveled = sol.annotate(phi)
        target = interpret(leveled)
        results, leveled_results = [], []
        for strat in STRATEGIES:
            seeds = range(random_seeds) if strat == "random" else (None,)
            for s in seeds:
                tr = normalize(phi, strat, seed=None if s is None else seed * 1000 + s)
                results.append(tr.result)
                # positions do not depend on levels, so replay on the annotated source
                lv_tr = RewriteTrace(leveled, tr.steps)
                leveled_res = lv_tr.replay()
                same = erase_levels(leveled_res) if mode == "nf" else leveled_res
                if same != tr.result:
                    interp.record(False, ("erasure", phi))
                leveled_results.append(leveled_res)
        got = {interpret(r) for r in leveled_results}
        interp.record(got == {target}, phi)
        alpha.record(all(r == results[0] for r in results), phi)
        if leveled_results[0] != embed(target):
            vs_embed += 1
        vs_snf += results[0] != surface_normal_form(phi)
    alpha.notes["alpha_ne_embed_interp"] = vs_embed
    alpha.notes["alpha_ne_surface_nf"] = vs_snf
    return [interp, alpha]


# -- termination -----------------------------------------------------------

def termination_suite(cases: int = 300, max_size: int = 20, seed: int = 0) -> list[LawResult]:
    cases_law = LawResult("termination-step-cases")
    measure = LawResult("termination-measure-decreases")
    ternary = LawResult("padding-ternary")
    steps_total = 0
    for i in range(cases):
        phi = generate(_seed("term", seed, i), max_size, "tst")
        src = na_pad(phi)
        ternary.record(is_ternary(src), phi)
        bound = complexity(surface_normal_form(src))
        tr = normalize(src, "outermost")
        prev = src
        prev_m = termination_measure(src, src, bound)
        ok_cases = ok_measure = True
        for st in tr.steps:
            cur = step(prev, st.position)
            if step_case(prev, cur) is None or not is_ternary(cur):
                ok_cases = False
            try:
                m = termination_measure(cur, src, bound)
            except Exception:
                ok_measure = False
                break
            if not m < prev_m:
                ok_measure = False
            prev, prev_m = cur, m
            steps_total += 1
        cases_law.record(ok_cases, phi)
        measure.record(ok_measure, phi)
    measure.notes["steps"] = steps_total
    return [ternary, cases_law, measure]


# -- stratifiability -------------------------------------------------------

def brute_force_stratifiable(x) -> bool:
    """Exhaustive search over levels in ``[-k, k]`` for the ``k`` level variables.

    Deliberately independent of :mod:`stratal.stratify`: collects its own
    constraints and backtracks over the window.
    """
    sites: list = []
    cons: list = []  # (set_site, set_off, elem_site, elem_off)

    def term(t, scope, pos):
        if isinstance(t, Var):
            if isinstance(t.name, Bound):
                return scope[-1 - t.name.index], 0
            key = ("free", t.name.id, t.name.level)
            if key not in sites:
                sites.append(key)
            return key, 0
        key = ("bind", pos)
        return key, 1

    def walk(x, scope, pos):
        if isinstance(x, Bot):
            return
        if isinstance(x, Neg):
            walk(x.body, scope, pos + "0")
        elif isinstance(x, And):
            walk(x.left, scope, pos + "0")
            walk(x.right, scope, pos + "1")
        elif isinstance(x, (All, Comp)):
            key = ("bind", pos)
            sites.append(key)
            walk(x.body, scope + (key,), pos + "0")
        elif isinstance(x, In):
            s_site, s_off = term(x.set, scope, pos + "1")
            e_site, e_off = term(x.elem, scope, pos + "0")
            cons.append((s_site, s_off, e_site, e_off))
            walk(x.elem, scope, pos + "0")
            walk(x.set, scope, pos + "1")
        elif isinstance(x, Var):
            if isinstance(x.name, Atom):
                term(x, scope, pos)

    walk(x, (), "")
    k = len(sites)
    window = range(-k, k + 1)
    order = {s: i for i, s in enumerate(sites)}
    # constraints become checkable once their later site is assigned
    by_last: dict[int, list] = {}
    for c in cons:
        last = max(order[c[0]], order[c[2]])
        by_last.setdefault(last, []).append(c)
    val: dict = {}

    def search(i):
        if i == k:
            return True
        for v in window:
            val[sites[i]] = v
            if all(val[s] + so == val[e] + eo + 1 for s, so, e, eo in by_last.get(i, ())):
                if search(i + 1):
                    return True
        del val[sites[i]]
        return False

    return search(0)


class _Unleveled:
    """Unconstrained NF syntax over a tiny name pool, so cycles are common."""

    def __init__(self, rng, names=("p", "q")):
        self.rng = rng
        self.names = names

    def formula(self, n, depth=0):
        r = self.rng
        if n <= 2:
            return Bot() if n == 1 else Neg(Bot())
        kind = r.choices(("neg", "all", "and", "in"), weights=(1, 2, 2, 4))[0]
        if kind == "neg":
            return Neg(self.formula(n - 1, depth))
        if kind == "all":
            return All(None, self.formula(n - 1, depth + 1), r.choice("xyz"))
        k = r.randint(1, n - 2)
        if kind == "and":
            return And(self.formula(k, depth), self.formula(n - 1 - k, depth))
        return In(self.term(k, depth), self.term(n - 1 - k, depth))

    def term(self, n, depth):
        r = self.rng
        if n <= 2:
            if depth and r.random() < 0.6:
                return Var(Bound(r.randrange(depth), None))
            return Var(Atom.named(r.choice(self.names), None))
        return Comp(None, self.formula(n - 1, depth + 1), r.choice("abc"))


def _random_unleveled(rng, n):
    return _Unleveled(rng).formula(n)


def stratify_suite(cases: int = 500, max_size: int = 10, seed: int = 0) -> list[LawResult]:
    agree = LawResult("infer-vs-brute-force")
    sound = LawResult("infer-soundness")
    shift = LawResult("shift-invariance")
    witness = LawResult("cycle-witness-replays")
    positives = 0
    for i in range(cases):
        rng = random.Random(f"strat:{seed}:{i}")
        x = _random_unleveled(rng, rng.randint(1, max_size))
        sol = infer_levels(x)
        ok = not isinstance(sol, Cycle)
        positives += ok
        agree.record(ok == brute_force_stratifiable(x), x)
        if ok:
            sound.record(check_stratified(sol.annotate(x)) == [], x)
            j = rng.randrange(len(sol.shift_classes)) if sol.shift_classes else None
            if j is not None:
                moved = sol.shifted(j, rng.randint(-3, 3))
                shift.record(check_stratified(moved.annotate(x)) == [], x)
        else:
            witness.record(sol.replays(), x)
    agree.notes["stratifiable"] = positives
    return [agree, sound, shift, witness]


SUITES = {
    "sigma": sigma_suite,
    "confluence": confluence_suite,
    "termination": termination_suite,
    "stratify": stratify_suite,
    "interpretation": interpretation_suite,
}
