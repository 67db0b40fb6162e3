"""The seven saptabhangi truth values and their connectives.

A value is a non-empty triple ``(t, f, u)`` of bits: ``t`` marks
true-in-context (asti), ``f`` false-in-context (nasti) and ``u``
unsayable-in-context (avaktavyam).  Connectives act componentwise.

The bit-level formulas (``neg_bits``, ``conj_bits``, ``disj_bits``) use only
``&`` and ``|`` so the same code runs on Python ints and on numpy bool
arrays; :mod:`saptabhangi.valuation` relies on that for batch evaluation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterator

__all__ = [
    "TruthValue",
    "ValueName",
    "Connective",
    "V1", "V2", "V3", "V4", "V5", "V6", "V7",
    "ALL_VALUES",
    "CLASSICAL_VALUES",
    "ASTI", "NASTI", "ASTI_NASTI", "AVAKTAVYAM",
    "ASTI_AVAKTAVYAM", "NASTI_AVAKTAVYAM", "ASTI_NASTI_AVAKTAVYAM",
    "negate", "conj", "disj", "implies", "is_designated",
    "neg_bits", "conj_bits", "disj_bits",
    "truth_table", "LawResult", "check_algebraic_laws",
]


class ValueName(enum.Enum):
    ASTI = (1, 0, 0)
    NASTI = (0, 1, 0)
    ASTI_NASTI = (1, 1, 0)
    AVAKTAVYAM = (0, 0, 1)
    ASTI_AVAKTAVYAM = (1, 0, 1)
    NASTI_AVAKTAVYAM = (0, 1, 1)
    ASTI_NASTI_AVAKTAVYAM = (1, 1, 1)


@dataclass(frozen=True, order=True)
class TruthValue:
    """An immutable ``(t, f, u)`` triple; ``(0, 0, 0)`` is rejected."""

    t: int
    f: int
    u: int

    def __post_init__(self):
        for bit in (self.t, self.f, self.u):
            if bit not in (0, 1) or isinstance(bit, float):
                raise ValueError(f"truth-value components must be 0 or 1, got {bit!r}")
        # normalise bools to ints so equality and hashing are uniform
        object.__setattr__(self, "t", int(self.t))
        object.__setattr__(self, "f", int(self.f))
        object.__setattr__(self, "u", int(self.u))
        if not (self.t or self.f or self.u):
            raise ValueError("(0, 0, 0) is not a truth value")

    @classmethod
    def from_bits(cls, bits) -> "TruthValue":
        bits = tuple(bits)
        if len(bits) != 3:
            raise ValueError(f"expected 3 bits, got {len(bits)}")
        return cls(*bits)

    @classmethod
    def from_name(cls, name: str) -> "TruthValue":
        try:
            return cls(*ValueName[name.upper()].value)
        except KeyError:
            raise ValueError(f"unknown value name {name!r}") from None

    @property
    def bits(self) -> tuple[int, int, int]:
        return (self.t, self.f, self.u)

    @property
    def name(self) -> ValueName:
        return ValueName(self.bits)

    @property
    def index(self) -> int:
        """1-based position in the canonical v1..v7 order."""
        return ALL_VALUES.index(self) + 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __str__(self) -> str:
        return self.name.name

    def __repr__(self) -> str:
        return f"TruthValue({self.t}, {self.f}, {self.u})"


V1 = ASTI = TruthValue(1, 0, 0)
V2 = NASTI = TruthValue(0, 1, 0)
V3 = ASTI_NASTI = TruthValue(1, 1, 0)
V4 = AVAKTAVYAM = TruthValue(0, 0, 1)
V5 = ASTI_AVAKTAVYAM = TruthValue(1, 0, 1)
V6 = NASTI_AVAKTAVYAM = TruthValue(0, 1, 1)
V7 = ASTI_NASTI_AVAKTAVYAM = TruthValue(1, 1, 1)

ALL_VALUES: tuple[TruthValue, ...] = (V1, V2, V3, V4, V5, V6, V7)
CLASSICAL_VALUES: tuple[TruthValue, ...] = (V1, V2)


def neg_bits(t, f, u):
    return f, t, u


def conj_bits(t, f, u, t2, f2, u2):
    return t & t2, f | f2, u | u2 | (t & u2) | (u & t2)


def disj_bits(t, f, u, t2, f2, u2):
    return t | t2, f & f2, u | u2 | (f & u2) | (u & f2)


def negate(v: TruthValue) -> TruthValue:
    return TruthValue(*neg_bits(*v.bits))


def conj(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(*conj_bits(*a.bits, *b.bits))


def disj(a: TruthValue, b: TruthValue) -> TruthValue:
    return TruthValue(*disj_bits(*a.bits, *b.bits))


def implies(a: TruthValue, b: TruthValue) -> TruthValue:
    return disj(negate(a), b)


def is_designated(v: TruthValue) -> bool:
    return v.t == 1


class Connective(enum.Enum):
    NEG = "neg"
    AND = "and"
    OR = "or"
    IMPLIES = "implies"

    @property
    def arity(self) -> int:
        return 1 if self is Connective.NEG else 2

    @property
    def function(self) -> Callable:
        return _FUNCTIONS[self]


_FUNCTIONS = {
    Connective.NEG: negate,
    Connective.AND: conj,
    Connective.OR: disj,
    Connective.IMPLIES: implies,
}


def truth_table(connective: Connective | str):
    """Tabulate a connective over ``ALL_VALUES``.

    Returns a list of 7 values for ``NEG`` and a 7x7 list of lists
    (row = left operand, column = right operand) otherwise.
    """
    connective = Connective(connective)
    fn = connective.function
    if connective.arity == 1:
        return [fn(a) for a in ALL_VALUES]
    return [[fn(a, b) for b in ALL_VALUES] for a in ALL_VALUES]


@dataclass(frozen=True)
class LawResult:
    name: str
    cases: int
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures


def _law(name, cases, predicate) -> LawResult:
    cases = list(cases)
    failures = tuple(c for c in cases if not predicate(*c))
    return LawResult(name, len(cases), failures)


def _literal_u_equals_join(connective):
    def check(a, b):
        fn = conj_bits if connective == "and" else disj_bits
        return fn(*a.bits, *b.bits)[2] == (a.u | b.u)
    return check


def _closed(fn):
    # TruthValue's constructor already refuses (0,0,0); this re-checks the raw bits
    def check(*args):
        bits = fn(*(x.bits for x in args))
        return bits in {v.bits for v in ALL_VALUES}
    return check


def check_algebraic_laws() -> list[LawResult]:
    """Exhaustively verify closure and the algebraic laws over all values."""
    vals = ALL_VALUES
    singles = [(a,) for a in vals]
    pairs = [(a, b) for a in vals for b in vals]
    triples = [(a, b, c) for a in vals for b in vals for c in vals]

    def raw_neg(a):
        return neg_bits(*a)

    def raw_conj(a, b):
        return conj_bits(*a, *b)

    def raw_disj(a, b):
        return disj_bits(*a, *b)

    def raw_impl(a, b):
        return disj_bits(*neg_bits(*a), *b)

    return [
        _law("closure: neg", singles, _closed(raw_neg)),
        _law("closure: and", pairs, _closed(raw_conj)),
        _law("closure: or", pairs, _closed(raw_disj)),
        _law("closure: implies", pairs, _closed(raw_impl)),
        _law("negation involution", singles, lambda a: negate(negate(a)) == a),
        _law("commutativity: and", pairs, lambda a, b: conj(a, b) == conj(b, a)),
        _law("commutativity: or", pairs, lambda a, b: disj(a, b) == disj(b, a)),
        _law("De Morgan: not(a and b)", pairs,
             lambda a, b: negate(conj(a, b)) == disj(negate(a), negate(b))),
        _law("De Morgan: not(a or b)", pairs,
             lambda a, b: negate(disj(a, b)) == conj(negate(a), negate(b))),
        _law("associativity: and", triples,
             lambda a, b, c: conj(conj(a, b), c) == conj(a, conj(b, c))),
        _law("associativity: or", triples,
             lambda a, b, c: disj(disj(a, b), c) == disj(a, disj(b, c))),
        _law("u-clause simplification: and", pairs, _literal_u_equals_join("and")),
        _law("u-clause simplification: or", pairs, _literal_u_equals_join("or")),
    ]
