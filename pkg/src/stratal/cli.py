"""``stratal`` command line.

Exit codes: 0 success; 1 stratification violation, unstratifiable input,
exhausted fuel or a failed property; 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import internal as I
from .errors import ModeError, ParseError, StratalError, StratificationRequired
from .measures import report
from .normalize import Status, interpret, normalize
from .props import SUITES
from .stratify import Cycle, check_stratified, infer_levels
from .surface import Comp, Var
from .syntax import Mode, parse, show

OK, VIOLATION, USAGE = 0, 1, 2

DEFAULT_MODE = {
    "parse": Mode.TST, "check": Mode.TST, "infer": Mode.NF,
    "normalize": Mode.TST, "measures": Mode.TST,
}


class _UsageError(Exception):
    pass


def _read(args) -> str:
    if args.expr is not None:
        return args.expr
    if args.file in (None, "-"):
        return sys.stdin.read()
    try:
        with open(args.file, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _UsageError(str(e)) from None


def _load(args):
    mode = Mode(args.mode) if args.mode else DEFAULT_MODE[args.cmd]
    return parse(_read(args), mode), mode


def _emit(args, payload: dict, text: str):
    print(json.dumps(payload) if args.json else text)


def _kind(x) -> str:
    return "term" if isinstance(x, (Var, Comp)) else "formula"


# -- subcommands -----------------------------------------------------------

def cmd_parse(args) -> int:
    x, mode = _load(args)
    _emit(args, {"kind": _kind(x), "mode": mode.value, "text": show(x)}, show(x))
    return OK


def cmd_check(args) -> int:
    x, _ = _load(args)
    try:
        bad = check_stratified(x)
    except ValueError:
        raise _UsageError("check needs every name leveled (use infer for NF)") from None
    if not bad:
        _emit(args, {"stratified": True, "violations": []}, "stratified")
        return OK
    lines = ["not stratified:"] + [
        f"  at {list(b.position)}: set level {b.set_level}, element level {b.elem_level}"
        for b in bad
    ]
    _emit(args, {"stratified": False, "violations": [b.to_json() for b in bad]}, "\n".join(lines))
    return VIOLATION


def cmd_infer(args) -> int:
    x, _ = _load(args)
    sol = infer_levels(x)
    if isinstance(sol, Cycle):
        lines = [f"not stratifiable: cycle with net offset {sol.net_offset}"]
        for e in sol.edges:
            lines.append(f"  {_site(e.src)} - {_site(e.dst)} = {e.offset}  (membership at {list(e.position)})")
        _emit(args, {"stratifiable": False, "witness": sol.to_json()}, "\n".join(lines))
        return VIOLATION
    annotated = sol.annotate(x)
    _emit(
        args,
        {"stratifiable": True, "annotated": show(annotated), **sol.to_json()},
        show(annotated),
    )
    return OK


def _site(s) -> str:
    if s.kind == "free":
        return s.label
    return f"{s.label}@{list(s.position)}"


def cmd_normalize(args) -> int:
    x, mode = _load(args)
    strategy = args.strategy
    if mode is Mode.RAW and args.fuel is None and strategy != "bigstep":
        raise _UsageError("RAW mode needs --fuel")
    try:
        tr = normalize(x, strategy, fuel=args.fuel, seed=args.seed)
    except StratificationRequired as e:
        _emit(args, {"error": "StratificationRequired", "message": str(e)}, f"error: {e}")
        return VIOLATION
    if args.trace or (args.json and strategy != "bigstep"):
        for line in tr.jsonl():
            print(line)
    elif args.json:
        print(json.dumps({"result": show(tr.result), "status": tr.status.value, "steps": 0}))
    else:
        print(show(tr.result))
        if tr.status is not Status.NORMAL:
            print(f"status: {tr.status.value} after {len(tr.steps)} steps", file=sys.stderr)
    return OK if tr.status is Status.NORMAL else VIOLATION


def cmd_measures(args) -> int:
    x, _ = _load(args)
    out = report(x)
    try:
        out["minlev"] = I.minlev(interpret(x))
    except StratificationRequired:
        pass
    _emit(args, out, "\n".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}"
                               for k, v in out.items()))
    return OK


def cmd_prop(args) -> int:
    suite = SUITES[args.suite]
    kw = {"cases": args.cases, "seed": args.seed}
    if args.max_size is not None:
        kw["max_size"] = args.max_size
    if args.suite == "confluence":
        kw["mode"] = args.mode or "tst"
    results = suite(**kw)
    ok = all(r.ok for r in results)
    if args.json:
        print(json.dumps({"suite": args.suite, "ok": ok, "seed": args.seed,
                          "laws": [r.to_json() for r in results]}))
    else:
        for r in results:
            print(r.line())
            for ex in r.examples:
                print(f"    counterexample: {ex}")
    return OK if ok else VIOLATION


# -- wiring ----------------------------------------------------------------

def _default_seed() -> int:
    raw = os.environ.get("STRATAL_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"STRATAL_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stratal", description="Stratified set syntax toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--mode", choices=[m.value for m in Mode])
    sub = p.add_subparsers(dest="cmd", required=True)

    def source(sp):
        sp.add_argument("file", nargs="?", default="-", help="input file, or - for stdin")
        sp.add_argument("-e", "--expr", help="input text given inline")

    helps = {
        "parse": "parse and pretty-print",
        "check": "check the levels of leveled (TST) input",
        "infer": "infer levels for unleveled (NF) input",
        "normalize": "rewrite to normal form",
        "measures": "size, complexity and reduct counts",
    }
    subs = {}
    for name, h in helps.items():
        subs[name] = sp = sub.add_parser(name, parents=[common], help=h)
        source(sp)
        sp.set_defaults(func=globals()[f"cmd_{name}"])
    n = subs["normalize"]
    n.add_argument("--strategy", default="bigstep",
                   choices=["bigstep", "outermost", "innermost", "random"])
    n.add_argument("--seed", type=int, default=None, help="seed for the random strategy")
    n.add_argument("--fuel", type=int, default=None, help="maximum number of steps")
    n.add_argument("--trace", action="store_true", help="emit the trace as JSON lines")

    pp = sub.add_parser("prop", parents=[common], help="run a property suite")
    pp.add_argument("--suite", required=True, choices=sorted(SUITES))
    pp.add_argument("--cases", type=int, default=500)
    pp.add_argument("--max-size", type=int, default=None)
    pp.add_argument("--seed", type=int, default=None)
    pp.set_defaults(func=cmd_prop)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        if args.cmd == "prop" and args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except (ParseError, ModeError, _UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except StratalError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return VIOLATION


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
