"""Command-line front end.

    filesem eval MODEL DISCOURSE [--context SOURCE] [--trace] [--json]
    filesem readings MODEL SKELETON [--lexicon PATH] [--json]
    filesem scenarios [CORPUS] [--json]
    filesem oracle [--seed N] [--instances N] [--skeletons N] [--json]

Exit codes for eval: 0 true, 1 false, 2 presup-failure, 3 parse or scope
error. readings exits 3 on an invalid skeleton; scenarios exits 4 if any
fixture fails; oracle exits 1 on any disagreement.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import corpus as C
from . import logic as L
from . import model as M
from .evaluate import EvalError, check_sentence
from .lexicon import LexiconError, load as load_lexicon
from .readings import InvalidSkeleton, load_skeleton, readings
from .state import StateError, render

EXIT = {"true": 0, "false": 1, "presup-failure": 2}
EXIT_INPUT, EXIT_SCENARIOS = 3, 4
_INPUT_ERRORS = (L.LogicSyntaxError, L.ScopeError, EvalError, M.ModelError, StateError, OSError)


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _fail_input(err) -> int:
    print(f"error: {err}", file=sys.stderr)
    return EXIT_INPUT


def cmd_eval(args) -> int:
    try:
        model = M.load(args.model)
        with open(args.discourse, encoding="utf-8") as fh:
            box = L.parse_discourse(fh.read())
        verdict = check_sentence(box, model=model, context=C.context_file(model, args.context))
    except _INPUT_ERRORS as e:
        return _fail_input(e)
    tables = {}
    if args.trace and verdict.file is not None:
        tables["output"] = verdict.file
        for i in verdict.file:
            for p, f in i.files:
                tables.setdefault(f"{p} @ {i.world} {dict(i.assignment)}", f)
    if args.json:
        _emit({
            "verdict": verdict.value,
            "diagnostic": verdict.diagnostic,
            "failures": list(verdict.failures),
            "trace": {k: [{"assignment": dict(g), "world": w} for g, w in _rows(f)] for k, f in tables.items()},
        })
    else:
        print(str(verdict))
        for failed in verdict.failures:
            print(f"  failed: {failed}")
        for k, f in tables.items():
            print(f"\n# {k}\n{render(f)}")
    return EXIT[verdict.value]


def _rows(f):
    from .state import as_rows

    return [({k: sorted(v) if isinstance(v, frozenset) else v for k, v in g.items()}, w) for g, w in as_rows(f)]


def cmd_readings(args) -> int:
    try:
        lex = load_lexicon(args.lexicon)
        model = M.load(args.model)
        report = readings(load_skeleton(args.skeleton), model, lex)
    except (InvalidSkeleton, LexiconError, *_INPUT_ERRORS) as e:
        return _fail_input(e)
    if args.json:
        _emit([r.as_dict() for r in report.rows])
    else:
        print(report.text())
    return 0


def cmd_scenarios(args) -> int:
    try:
        fixtures = C.load_corpus(args.corpus or C.default_corpus())
    except (C.CorpusError, OSError) as e:
        return _fail_input(e)
    if not fixtures:
        print("warning: corpus has no fixtures", file=sys.stderr)
    lex = load_lexicon()
    results = []
    for fx in fixtures:
        try:
            got = C.run_fixture(fx, lex)
        except (InvalidSkeleton, *_INPUT_ERRORS) as e:
            got = f"error: {e}"
        results.append((fx, got, got == fx.expect))
    failed = [fx.name for fx, _, ok in results if not ok]
    if args.json:
        _emit({
            "fixtures": [{"name": fx.name, "kind": fx.kind, "expect": C.show_expect(fx.expect),
                          "got": C.show_expect(got), "status": "PASS" if ok else "FAIL", "anchor": fx.anchor}
                         for fx, got, ok in results],
            "passed": len(results) - len(failed),
            "failed": failed,
        })
    else:
        width = max((len(fx.name) for fx in fixtures), default=4)
        for fx, got, ok in results:
            line = f"{'PASS' if ok else 'FAIL'}  {fx.name:<{width}}  {C.show_expect(got)}"
            if not ok:
                line += f"  (expected {C.show_expect(fx.expect)})"
            print(line)
        print(f"{len(results) - len(failed)}/{len(results)} passed")
    if failed:
        print("failing: " + ", ".join(failed), file=sys.stderr)
        return EXIT_SCENARIOS
    return 0


def cmd_oracle(args) -> int:
    from .oracle import stats_table

    table, data = stats_table(args.seed, args.instances, args.skeletons)
    if args.json:
        _emit({"seed": args.seed, **data})
    else:
        print(f"seed {args.seed}")
        print(table)
    return 0 if all(d["agree"] == d["cases"] for d in data.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="filesem", description="Evaluate discourse boxes and enumerate readings.")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a discourse box against a model")
    ev.add_argument("model")
    ev.add_argument("discourse")
    ev.add_argument("--context", help="start from the content of this attitude source")
    ev.add_argument("--trace", action="store_true", help="print file tables")
    ev.add_argument("--json", action="store_true")
    ev.set_defaults(func=cmd_eval)

    rd = sub.add_parser("readings", help="enumerate and filter readings of a skeleton")
    rd.add_argument("model")
    rd.add_argument("skeleton")
    rd.add_argument("--lexicon", help="lexicon file (default: bundled)")
    rd.add_argument("--json", action="store_true")
    rd.set_defaults(func=cmd_readings)

    sc = sub.add_parser("scenarios", help="run a scenario corpus")
    sc.add_argument("corpus", nargs="?", help="directory of *.scenario files (default: bundled)")
    sc.add_argument("--json", action="store_true")
    sc.set_defaults(func=cmd_scenarios)

    orc = sub.add_parser("oracle", help="brute-force agreement statistics")
    orc.add_argument("--seed", type=int, default=0)
    orc.add_argument("--instances", type=int, default=500)
    orc.add_argument("--skeletons", type=int, default=20)
    orc.add_argument("--json", action="store_true")
    orc.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
