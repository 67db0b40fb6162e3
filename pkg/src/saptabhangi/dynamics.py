"""Scenario engine: within-context evolution and labeled context switches.

Evolution inside a context is a finite transition table over valuation
snapshots (optionally identity where no entry exists).  A switch rule
``label: from -> to`` moves to another context; the arriving valuation
is the target context's declared valuation with the rule's overrides
applied last.

There is deliberately no operation that merges valuations from two
contexts.  :func:`assert_no_global_valuation` only reads them side by side.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .formula import Formula, atoms_of
from .valuation import Valuation, evaluate
from .values import TruthValue

__all__ = [
    "ScenarioError",
    "ProgramError",
    "StepTable",
    "SwitchRule",
    "Scenario",
    "EventKind",
    "TraceEvent",
    "Trace",
    "Step",
    "Switch",
    "step",
    "switch",
    "run",
    "parse_program",
    "GlobalReport",
    "assert_no_global_valuation",
    "load_scenario",
    "scenario_from_dict",
    "BUNDLED_SCENARIOS",
    "bundled_scenario",
]

BUNDLED_SCENARIOS = (
    "double_slit.json",
    "spin_half.json",
    "cat_astinasti.json",
    "cat_avaktavyam.json",
    "wigner.json",
)


class ScenarioError(ValueError):
    pass


class ProgramError(ScenarioError):
    """A step or switch failed while running a program."""

    def __init__(self, index: int, cause: ScenarioError):
        self.index = index
        self.cause = cause
        super().__init__(f"program instruction {index}: {cause}")


Snapshot = tuple  # tuple[TruthValue, ...] in atom-universe order


@dataclass(frozen=True)
class StepTable:
    transitions: Mapping[Snapshot, Snapshot] = field(default_factory=dict)
    identity_default: bool = True


@dataclass(frozen=True)
class SwitchRule:
    label: str
    source: str
    target: str
    post: Mapping[str, TruthValue] = field(default_factory=dict)


@dataclass(frozen=True)
class Scenario:
    contexts: tuple[str, ...]
    atoms: tuple[str, ...]
    valuations: Mapping[str, Valuation]
    steps: Mapping[str, StepTable]
    switches: tuple[SwitchRule, ...]
    initial: str
    name: str = ""

    def __post_init__(self):
        declared = set(self.contexts)
        if len(declared) != len(self.contexts):
            raise ScenarioError("duplicate context names")
        if self.initial not in declared:
            raise ScenarioError(f"initial context {self.initial!r} is not declared")
        for ctx in self.contexts:
            if ctx not in self.valuations:
                raise ScenarioError(f"context {ctx!r} has no valuation")
        for ctx, val in self.valuations.items():
            if ctx not in declared:
                raise ScenarioError(f"valuation given for undeclared context {ctx!r}")
            self._check_total(val.assignment, f"valuation of {ctx!r}")
        for ctx, table in self.steps.items():
            if ctx not in declared:
                raise ScenarioError(f"step table given for undeclared context {ctx!r}")
            for before, after in table.transitions.items():
                for snap in (before, after):
                    if len(snap) != len(self.atoms):
                        raise ScenarioError(f"step table of {ctx!r}: snapshot is not total")
        seen = set()
        for rule in self.switches:
            for ctx in (rule.source, rule.target):
                if ctx not in declared:
                    raise ScenarioError(f"switch {rule.label!r} references undeclared context {ctx!r}")
            if (rule.label, rule.source) in seen:
                raise ScenarioError(f"switch {rule.label!r} declared twice from {rule.source!r}")
            seen.add((rule.label, rule.source))
            unknown = set(rule.post) - set(self.atoms)
            if unknown:
                raise ScenarioError(f"switch {rule.label!r} overrides unknown atoms {sorted(unknown)}")

    def _check_total(self, assignment, what):
        missing = [a for a in self.atoms if a not in assignment]
        extra = [a for a in assignment if a not in self.atoms]
        if missing:
            raise ScenarioError(f"{what} is missing atoms {missing}")
        if extra:
            raise ScenarioError(f"{what} assigns undeclared atoms {extra}")

    def initial_state(self) -> Valuation:
        return self.valuations[self.initial]

    def rules_from(self, context: str) -> list[SwitchRule]:
        return [r for r in self.switches if r.source == context]


class EventKind(enum.Enum):
    STEP = "step"
    SWITCH = "switch"


@dataclass(frozen=True)
class TraceEvent:
    kind: EventKind
    before: str
    after: str
    label: str | int  # switch label, or the tick number for a step
    valuation: Valuation


@dataclass(frozen=True)
class Trace:
    initial: Valuation
    events: tuple[TraceEvent, ...] = ()

    @property
    def final(self) -> Valuation:
        return self.events[-1].valuation if self.events else self.initial


def step(s: Scenario, state: Valuation) -> Valuation:
    """Apply one tick of the current context's deterministic evolution."""
    table = s.steps.get(state.context, StepTable())
    snap = state.snapshot(s.atoms)
    if snap in table.transitions:
        return Valuation(state.context, dict(zip(s.atoms, table.transitions[snap])))
    if table.identity_default:
        return state
    shown = ", ".join(f"{a}={v}" for a, v in zip(s.atoms, snap))
    raise ScenarioError(f"no transition from ({shown}) in context {state.context!r}")


def switch(s: Scenario, state: Valuation, label: str) -> Valuation:
    for rule in s.rules_from(state.context):
        if rule.label == label:
            return s.valuations[rule.target].updated(rule.post)
    available = sorted(r.label for r in s.rules_from(state.context))
    raise ScenarioError(
        f"no switch {label!r} from context {state.context!r}; "
        f"available: {', '.join(available) if available else '(none)'}")


@dataclass(frozen=True)
class Step:
    pass


@dataclass(frozen=True)
class Switch:
    label: str


def run(s: Scenario, program: Iterable[Step | Switch]) -> Trace:
    state = s.initial_state()
    events = []
    ticks = 0
    for i, instr in enumerate(program):
        try:
            if isinstance(instr, Step):
                new = step(s, state)
                ticks += 1
                events.append(TraceEvent(EventKind.STEP, state.context, new.context, ticks, new))
            elif isinstance(instr, Switch):
                new = switch(s, state, instr.label)
                events.append(TraceEvent(EventKind.SWITCH, state.context, new.context, instr.label, new))
            else:
                raise ScenarioError(f"unknown instruction {instr!r}")
        except ProgramError:
            raise
        except ScenarioError as exc:
            raise ProgramError(i, exc) from exc
        state = new
    return Trace(s.initial_state(), tuple(events))


def parse_program(
    text: str,
    scenario: Scenario | None = None,
    rng: random.Random | None = None,
) -> list[Step | Switch]:
    """Parse ``"step,switch:open_alive,..."``.

    ``switch:?`` picks a label uniformly among the rules available at that
    point, using ``rng``; it needs the scenario to resolve contexts.
    """
    program: list[Step | Switch] = []
    context = scenario.initial if scenario else None
    for i, raw in enumerate(t.strip() for t in text.split(",")):
        if not raw:
            if text.strip():
                raise ProgramError(i, ScenarioError("empty instruction"))
            continue
        if raw == "step":
            program.append(Step())
            continue
        kind, sep, label = raw.partition(":")
        if kind != "switch" or not sep or not label:
            raise ProgramError(i, ScenarioError(f"cannot parse instruction {raw!r}"))
        if label == "?":
            if scenario is None or rng is None:
                raise ProgramError(i, ScenarioError("'switch:?' needs a scenario and a seed"))
            rules = sorted(scenario.rules_from(context), key=lambda r: r.label)
            if not rules:
                raise ProgramError(i, ScenarioError(f"no switches from context {context!r}"))
            label = rng.choice(rules).label
        program.append(Switch(label))
        if scenario is not None:
            for rule in scenario.rules_from(context):
                if rule.label == label:
                    context = rule.target
                    break
    return program


@dataclass(frozen=True)
class GlobalReport:
    formula: Formula
    values: Mapping[str, TruthValue]

    @property
    def globally_uniform(self) -> bool:
        return len(set(self.values.values())) <= 1


def assert_no_global_valuation(s: Scenario, f: Formula) -> GlobalReport:
    """Evaluate ``f`` in every declared context, side by side."""
    missing = [a.name for a in atoms_of(f) if a.name not in s.atoms]
    if missing:
        raise ScenarioError(f"formula uses atoms outside the scenario: {missing}")
    return GlobalReport(f, {c: evaluate(f, s.valuations[c]) for c in s.contexts})


def _value(raw, where: str) -> TruthValue:
    try:
        return TruthValue.from_bits(raw)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def _assignment(raw, where: str) -> dict[str, TruthValue]:
    if not isinstance(raw, dict):
        raise ScenarioError(f"{where}: expected an object of atom -> [t, f, u]")
    return {a: _value(v, f"{where}, atom {a!r}") for a, v in raw.items()}


def scenario_from_dict(data: Mapping, name: str = "") -> Scenario:
    required = ("contexts", "atoms", "valuations", "initial")
    for key in required:
        if key not in data:
            raise ScenarioError(f"scenario is missing key {key!r}")
    contexts = tuple(data["contexts"])
    atoms = tuple(data["atoms"])
    valuations = {
        c: Valuation(c, _assignment(a, f"valuation of {c!r}"))
        for c, a in data["valuations"].items()
    }
    steps = {}
    for ctx, spec in data.get("steps", {}).items():
        transitions = {}
        for j, entry in enumerate(spec.get("transitions", [])):
            before = _assignment(entry["from"], f"steps[{ctx!r}][{j}].from")
            after = _assignment(entry["to"], f"steps[{ctx!r}][{j}].to")
            for part, what in ((before, "from"), (after, "to")):
                if set(part) != set(atoms):
                    raise ScenarioError(f"steps[{ctx!r}][{j}].{what} must assign exactly {list(atoms)}")
            transitions[tuple(before[a] for a in atoms)] = tuple(after[a] for a in atoms)
        steps[ctx] = StepTable(transitions, bool(spec.get("identity_default", True)))
    switches = tuple(
        SwitchRule(r["label"], r["from"], r["to"],
                   _assignment(r.get("post", {}), f"switch {r.get('label')!r} post"))
        for r in data.get("switches", [])
    )
    return Scenario(contexts, atoms, valuations, steps, switches, data["initial"], name)


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON ({exc})") from None
    try:
        return scenario_from_dict(data, path.stem)
    except KeyError as exc:
        raise ScenarioError(f"{path}: missing key {exc}") from None


def bundled_scenario(name: str) -> Scenario:
    """Load one of :data:`BUNDLED_SCENARIOS` from the package data."""
    if not name.endswith(".json"):
        name += ".json"
    ref = resources.files("saptabhangi") / "data" / name
    with resources.as_file(ref) as path:
        return load_scenario(path)
