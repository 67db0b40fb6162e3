"""Context-indexed valuations, formula evaluation and sequent validity.

A sequent ``gamma => delta [c]`` is valid when every valuation in context
``c`` either leaves some premise undesignated or designates some
conclusion.  Validity is decided by enumerating all ``7**n`` assignments
to the sequent's ``n`` atoms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .formula import And, Atom, Formula, Implies, Not, Or, atoms_of, parse, to_text
from .values import (
    ALL_VALUES,
    TruthValue,
    conj,
    conj_bits,
    disj,
    disj_bits,
    implies,
    is_designated,
    neg_bits,
    negate,
)

__all__ = [
    "DEFAULT_CAP",
    "Valuation",
    "Sequent",
    "EntailmentResult",
    "UnassignedAtomError",
    "CapExceededError",
    "evaluate",
    "check_sequent",
    "NamedProperty",
    "check_named_properties",
    "load_valuations",
]

DEFAULT_CAP = 8

# assignments evaluated per numpy batch
_CHUNK = 7 ** 6


class UnassignedAtomError(KeyError):
    def __init__(self, atom: str, context: str):
        self.atom = atom
        self.context = context
        super().__init__(f"atom {atom!r} has no value in context {context!r}")

    def __str__(self):
        return self.args[0]


class CapExceededError(ValueError):
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(f"sequent has {n} atoms, enumeration cap is {cap}")


@dataclass(frozen=True)
class Valuation:
    """Assignment of truth values to atom names, relative to one context."""

    context: str
    assignment: Mapping[str, TruthValue] = field(default_factory=dict)

    def __post_init__(self):
        if not self.context:
            raise ValueError("context name must be nonempty")
        frozen = {}
        for name, value in self.assignment.items():
            key = name.name if isinstance(name, Atom) else name
            frozen[key] = value if isinstance(value, TruthValue) else TruthValue.from_bits(value)
        object.__setattr__(self, "assignment", MappingProxyType(frozen))

    def __getitem__(self, atom: str | Atom) -> TruthValue:
        key = atom.name if isinstance(atom, Atom) else atom
        try:
            return self.assignment[key]
        except KeyError:
            raise UnassignedAtomError(key, self.context) from None

    def __eq__(self, other):
        if not isinstance(other, Valuation):
            return NotImplemented
        return self.context == other.context and dict(self.assignment) == dict(other.assignment)

    def __hash__(self):
        return hash((self.context, frozenset(self.assignment.items())))

    def updated(self, overrides: Mapping[str, TruthValue]) -> "Valuation":
        return Valuation(self.context, {**self.assignment, **overrides})

    def in_context(self, context: str) -> "Valuation":
        return Valuation(context, self.assignment)

    def snapshot(self, atoms: Sequence[str]) -> tuple[TruthValue, ...]:
        return tuple(self[a] for a in atoms)

    def to_json(self) -> dict:
        return {a: list(v.bits) for a, v in self.assignment.items()}


def evaluate(f: Formula, v: Valuation) -> TruthValue:
    if isinstance(f, Atom):
        return v[f.name]
    if isinstance(f, Not):
        return negate(evaluate(f.operand, v))
    left = evaluate(f.left, v)
    right = evaluate(f.right, v)
    if isinstance(f, And):
        return conj(left, right)
    if isinstance(f, Or):
        return disj(left, right)
    if isinstance(f, Implies):
        return implies(left, right)
    raise TypeError(f"not a formula: {f!r}")


def _evaluate_bits(f: Formula, columns: Mapping[str, tuple]):
    """Evaluate over batches of assignments held as bit arrays."""
    if isinstance(f, Atom):
        return columns[f.name]
    if isinstance(f, Not):
        return neg_bits(*_evaluate_bits(f.operand, columns))
    left = _evaluate_bits(f.left, columns)
    right = _evaluate_bits(f.right, columns)
    if isinstance(f, And):
        return conj_bits(*left, *right)
    if isinstance(f, Or):
        return disj_bits(*left, *right)
    if isinstance(f, Implies):
        return disj_bits(*neg_bits(*left), *right)
    raise TypeError(f"not a formula: {f!r}")


def _dedupe(formulas) -> tuple[Formula, ...]:
    return tuple(dict.fromkeys(parse(f) if isinstance(f, str) else f for f in formulas))


@dataclass(frozen=True)
class Sequent:
    """``gamma => delta [context]``; duplicate formulas are collapsed."""

    gamma: tuple[Formula, ...]
    delta: tuple[Formula, ...]
    context: str = "c"

    def __post_init__(self):
        object.__setattr__(self, "gamma", _dedupe(self.gamma))
        object.__setattr__(self, "delta", _dedupe(self.delta))

    @property
    def atoms(self) -> list[str]:
        return [a.name for a in atoms_of(*self.gamma, *self.delta)]

    def __str__(self):
        g = ", ".join(to_text(f) for f in self.gamma)
        d = ", ".join(to_text(f) for f in self.delta)
        return f"{g} => {d} [{self.context}]".strip()


@dataclass(frozen=True)
class EntailmentResult:
    valid: bool
    countermodel: Valuation | None
    valuations_checked: int

    def __post_init__(self):
        if self.valid != (self.countermodel is None):
            raise ValueError("a countermodel is present exactly when the sequent is invalid")


def _holds(s: Sequent, v: Valuation) -> bool:
    return (any(not is_designated(evaluate(a, v)) for a in s.gamma)
            or any(is_designated(evaluate(b, v)) for b in s.delta))


def check_sequent(
    s: Sequent,
    cap: int = DEFAULT_CAP,
    values: Sequence[TruthValue] = ALL_VALUES,
) -> EntailmentResult:
    """Decide ``s`` by enumerating every assignment to its atoms.

    Assignments are visited lexicographically: atoms in first-occurrence
    order (first atom most significant), each ranging over ``values`` in
    the order given.  The first failing assignment is the countermodel.

    ``values`` may be narrowed (e.g. to ``CLASSICAL_VALUES``) for
    diagnostics.
    """
    atoms = s.atoms
    n = len(atoms)
    if n > cap:
        raise CapExceededError(n, cap)
    values = tuple(values)
    k = len(values)
    total = k ** n

    table = np.array([v.bits for v in values], dtype=bool)  # (k, 3)
    weights = [k ** (n - 1 - i) for i in range(n)]
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        columns = {}
        for atom, w in zip(atoms, weights):
            col = table[(idx // w) % k]
            columns[atom] = (col[:, 0], col[:, 1], col[:, 2])
        ok = np.zeros(len(idx), dtype=bool)
        for a in s.gamma:
            ok |= ~np.broadcast_to(_evaluate_bits(a, columns)[0], ok.shape)
        for b in s.delta:
            ok |= np.broadcast_to(_evaluate_bits(b, columns)[0], ok.shape)
        bad = np.flatnonzero(~ok)
        if bad.size:
            i = int(idx[bad[0]])
            digits = [(i // w) % k for w in weights]
            model = Valuation(s.context, {a: values[d] for a, d in zip(atoms, digits)})
            # cross-check the batch path against the scalar evaluator
            assert not _holds(s, model), "batch and scalar evaluation disagree"
            return EntailmentResult(False, model, i + 1)
    return EntailmentResult(True, None, total)


@dataclass(frozen=True)
class NamedProperty:
    name: str
    sequent: Sequent
    expected_valid: bool
    result: EntailmentResult

    @property
    def as_expected(self) -> bool:
        return self.result.valid == self.expected_valid


_BATTERY = [
    ("identity", ["P"], ["P"], True),
    ("conjunction-elimination", ["P & Q"], ["P"], True),
    ("explosion", ["P", "!P"], ["Q"], False),
    ("modus ponens", ["P", "P -> Q"], ["Q"], False),
    ("excluded middle", [], ["P | !P"], False),
]


def check_named_properties(context: str = "c") -> list[NamedProperty]:
    """Run the fixed battery of structural and paraconsistency checks."""
    report = []
    for name, gamma, delta, expected in _BATTERY:
        s = Sequent(tuple(gamma), tuple(delta), context)
        report.append(NamedProperty(name, s, expected, check_sequent(s)))
    return report


def load_valuations(path: str | Path) -> dict[str, Valuation]:
    """Read ``{context: {atom: [t, f, u]}}`` JSON into valuations."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError("valuation file must hold a JSON object keyed by context")
    out = {}
    for ctx, assignment in data.items():
        if not isinstance(assignment, dict):
            raise ValueError(f"context {ctx!r}: expected an object of atom -> [t, f, u]")
        out[ctx] = Valuation(ctx, assignment)
    return out
