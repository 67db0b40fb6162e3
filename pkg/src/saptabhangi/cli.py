"""Command-line front end.

Exit status: 0 for an affirmative result, 1 for a negative result (the
witness is printed), 2 for usage or input errors.

JSON output keeps keys in the order they are documented in the README and
is written with two-space indentation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from .bridge import derive_triplet
from .dynamics import (
    EventKind,
    ScenarioError,
    assert_no_global_valuation,
    load_scenario,
    parse_program,
    run,
)
from .formula import FormulaSyntaxError, parse, parse_list, to_text
from .quantlogic import (
    MAX_SEARCH_DOMAIN,
    Distinctness,
    Form,
    MissingContextError,
    check_form,
    find_joint_model,
    load_model,
)
from .valuation import (
    DEFAULT_CAP,
    CapExceededError,
    Sequent,
    UnassignedAtomError,
    check_named_properties,
    check_sequent,
    evaluate,
    load_valuations,
)
from .values import ALL_VALUES, Connective, TruthValue, check_algebraic_laws, truth_table

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _value_json(v: TruthValue) -> dict:
    return {"name": v.name.name, "value": list(v.bits)}


def _assignment_json(assignment) -> dict:
    return {a: _value_json(v) for a, v in assignment.items()}


def _assignment_text(assignment) -> str:
    return ", ".join(f"{a}={v}" for a, v in assignment.items()) or "(no atoms)"


def _emit(args, payload: dict, text_lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def _resolve(path: str) -> Path:
    """A path on disk, or else the name of a bundled data file."""
    p = Path(path)
    if p.exists():
        return p
    bundled = resources.files("saptabhangi") / "data" / p.name
    if p.name == path and bundled.is_file():
        return Path(str(bundled))
    raise UsageError(f"no such file: {path}")


def _grid(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]


def cmd_table(args) -> int:
    connective = Connective(args.connective)
    table = truth_table(connective)
    names = [v.name.name for v in ALL_VALUES]
    if connective is Connective.NEG:
        payload = {"connective": connective.value, "rows": names,
                   "table": [v.name.name for v in table]}
        rows = [["v", "neg v"]] + [[a, b.name.name] for a, b in zip(names, table)]
    else:
        payload = {"connective": connective.value, "rows": names, "columns": names,
                   "table": [[v.name.name for v in row] for row in table]}
        rows = [[connective.value] + names]
        rows += [[a] + [v.name.name for v in row] for a, row in zip(names, table)]
    _emit(args, payload, _grid(rows))
    return EXIT_OK


def cmd_entail(args) -> int:
    gamma = parse_list(args.gamma)
    delta = parse_list(args.delta)
    s = Sequent(tuple(gamma), tuple(delta), args.context)
    result = check_sequent(s, cap=args.cap)
    payload = {
        "sequent": str(s),
        "context": s.context,
        "gamma": [to_text(f) for f in s.gamma],
        "delta": [to_text(f) for f in s.delta],
        "atoms": s.atoms,
        "valid": result.valid,
        "valuations_checked": result.valuations_checked,
        "countermodel": _assignment_json(result.countermodel.assignment) if result.countermodel else None,
    }
    lines = [f"sequent: {s}", f"valid: {str(result.valid).lower()}",
             f"valuations checked: {result.valuations_checked}"]
    if result.countermodel:
        lines.append(f"countermodel: {_assignment_text(result.countermodel.assignment)}")
    _emit(args, payload, lines)
    return EXIT_OK if result.valid else EXIT_NEGATIVE


def cmd_eval(args) -> int:
    valuations = load_valuations(_resolve(args.valuations))
    if args.context not in valuations:
        raise UsageError(f"context {args.context!r} not in {args.valuations}; "
                         f"available: {', '.join(valuations)}")
    f = parse(args.formula)
    value = evaluate(f, valuations[args.context])
    designated = value.t == 1
    payload = {"formula": to_text(f), "context": args.context, **_value_json(value),
               "designated": designated}
    _emit(args, payload, [f"{to_text(f)} [{args.context}] = {value} {list(value.bits)}"])
    return EXIT_OK if designated else EXIT_NEGATIVE


def cmd_scenario(args) -> int:
    scenario = load_scenario(_resolve(args.file))
    rng = random.Random(args.seed) if args.seed is not None else None
    program = parse_program(args.program, scenario, rng)
    trace = run(scenario, program)
    events = []
    lines = [f"scenario: {scenario.name}", f"initial: {trace.initial.context}: "
             f"{_assignment_text(trace.initial.assignment)}"]
    for i, e in enumerate(trace.events):
        tag = f"switch:{e.label}" if e.kind is EventKind.SWITCH else f"step:{e.label}"
        events.append({"index": i, "kind": e.kind.value, "label": e.label,
                       "before": e.before, "after": e.after,
                       "valuation": _assignment_json(e.valuation.assignment)})
        lines.append(f"[{i}] {tag} {e.before} -> {e.after}: {_assignment_text(e.valuation.assignment)}")
    final = trace.final
    payload = {"scenario": scenario.name, "initial": trace.initial.context, "events": events,
               "final": {"context": final.context,
                         "valuation": _assignment_json(final.assignment)}}
    lines.append(f"final: {final.context}: {_assignment_text(final.assignment)}")
    if args.query:
        f = parse(args.query)
        report = assert_no_global_valuation(scenario, f)
        final_value = evaluate(f, final)
        payload["query"] = {
            "formula": to_text(f),
            "final": {"context": final.context, **_value_json(final_value)},
            "contexts": {c: _value_json(v) for c, v in report.values.items()},
            "globally_uniform": report.globally_uniform,
        }
        lines.append(f"query {to_text(f)} in final context {final.context}: {final_value}")
        lines.extend(f"query {to_text(f)} in {c}: {v}" for c, v in report.values.items())
        lines.append(f"globally-uniform: {str(report.globally_uniform).lower()}")
    _emit(args, payload, lines)
    return EXIT_OK


def _forms(text: str) -> list[Form]:
    if text.strip().lower() == "all":
        return list(Form)
    return [Form.parse(t) for t in text.split(",") if t.strip()]


def cmd_qmodel(args) -> int:
    model = load_model(_resolve(args.file))
    d = Distinctness(args.distinctness)
    verdicts = [check_form(model, f, d) for f in _forms(args.form)]
    all_hold = all(v.holds for v in verdicts)
    payload = {"distinctness": d.value, "verdicts": [v.to_json() for v in verdicts],
               "all_hold": all_hold}
    lines = []
    for v in verdicts:
        line = f"form {v.form.name}: {'holds' if v.holds else 'fails'}"
        if v.witness is not None:
            line += f" (witness {v.witness})"
        if v.distinctness_failure:
            line += f" ({' and '.join(v.distinctness_failure)} not distinct under {d.value})"
        lines.append(line)
    _emit(args, payload, lines)
    return EXIT_OK if all_hold else EXIT_NEGATIVE


def cmd_qsearch(args) -> int:
    forms = _forms(args.form)
    d = Distinctness(args.distinctness)
    model = find_joint_model(args.size, forms, d, nonvacuous=args.nonvacuous)
    payload = {"size": args.size, "forms": [f.name for f in forms], "distinctness": d.value,
               "nonvacuous": args.nonvacuous,
               "model": model.to_json() if model else None}
    if model:
        lines = [f"model found: {json.dumps(model.to_json())}"]
    else:
        lines = [f"no model of size {args.size} satisfies forms "
                 f"{', '.join(f.name for f in forms)}"]
    _emit(args, payload, lines)
    return EXIT_OK if model else EXIT_NEGATIVE


def cmd_bridge(args) -> int:
    model = load_model(_resolve(args.file))
    derived = derive_triplet(model, args.context)
    # always JSON, whatever --format says
    print(json.dumps(derived.to_json(), indent=2))
    return EXIT_OK


def cmd_properties(args) -> int:
    battery = check_named_properties()
    laws = check_algebraic_laws()
    ok = all(p.as_expected for p in battery) and all(l.passed for l in laws)
    payload = {
        "passed": ok,
        "sequents": [{
            "name": p.name,
            "sequent": str(p.sequent),
            "expected_valid": p.expected_valid,
            "valid": p.result.valid,
            "countermodel": (_assignment_json(p.result.countermodel.assignment)
                             if p.result.countermodel else None),
            "as_expected": p.as_expected,
        } for p in battery],
        "laws": [{"name": l.name, "cases": l.cases, "failures": len(l.failures),
                  "passed": l.passed} for l in laws],
    }
    lines = []
    for p in battery:
        verdict = "valid" if p.result.valid else "invalid"
        line = f"{'PASS' if p.as_expected else 'FAIL'}  {p.name}: {p.sequent} is {verdict}"
        if p.result.countermodel:
            line += f" (countermodel {_assignment_text(p.result.countermodel.assignment)})"
        lines.append(line)
    for l in laws:
        lines.append(f"{'PASS' if l.passed else 'FAIL'}  {l.name}: {l.cases} cases, "
                     f"{len(l.failures)} failures")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="maximum atoms for sequent enumeration (default %(default)s)")
    common.add_argument("--distinctness", choices=[d.value for d in Distinctness],
                        default=Distinctness.DISJOINT.value)

    parser = argparse.ArgumentParser(
        prog="saptabhangi", description="Seven-valued contextual logic toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="print a connective's truth table")
    p.add_argument("connective", choices=[c.value for c in Connective])
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("entail", parents=[common], help="decide a sequent by enumeration")
    p.add_argument("--gamma", default="", help="comma-separated premises")
    p.add_argument("--delta", default="", help="comma-separated conclusions")
    p.add_argument("--context", default="c")
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula under a valuation file")
    p.add_argument("formula")
    p.add_argument("--valuations", required=True, help="JSON {context: {atom: [t,f,u]}}")
    p.add_argument("--context", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("scenario", parents=[common], help="run a scenario program")
    p.add_argument("file")
    p.add_argument("--program", default="", help='e.g. "step,switch:open_alive"')
    p.add_argument("--query", help="formula to evaluate in every context")
    p.add_argument("--seed", type=int, help="seed for 'switch:?' random choices")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("qmodel", parents=[common], help="check quantified forms on a model file")
    p.add_argument("file")
    p.add_argument("--form", default="all", help="comma-separated i..vii, or 'all'")
    p.set_defaults(func=cmd_qmodel)

    p = sub.add_parser("qsearch", parents=[common], help="search for a model of several forms")
    p.add_argument("--size", type=int, required=True,
                   help=f"domain size, 1..{MAX_SEARCH_DOMAIN}")
    p.add_argument("--form", default="all")
    p.add_argument("--nonvacuous", action="store_true",
                   help="require every mentioned context to be nonempty")
    p.set_defaults(func=cmd_qsearch)

    p = sub.add_parser("bridge", parents=[common], help="derive a triple from a model context")
    p.add_argument("file")
    p.add_argument("--context", required=True)
    p.set_defaults(func=cmd_bridge)

    p = sub.add_parser("properties", parents=[common], help="run the built-in property battery")
    p.set_defaults(func=cmd_properties)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        return args.func(args)
    except (FormulaSyntaxError, CapExceededError, UnassignedAtomError, MissingContextError,
            ScenarioError, UsageError, OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
