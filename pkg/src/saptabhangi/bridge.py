"""Translation between quantified models and truth-value triples.

A context of a :class:`~saptabhangi.quantlogic.FiniteModel` yields a triple
by universal reading over its extension ``C``:

* ``t = 1`` iff ``C`` is nonempty and every element of ``C`` is ``p``
* ``f = 1`` iff ``C`` is nonempty and no element of ``C`` is ``p``
* ``u = 1`` iff ``C`` is nonempty and every element of ``C`` is ``q``

Two conventions fill the gaps.  An empty context gives ``(0, 0, 1)`` and is
flagged ``vacuous``.  A nonempty context that splits on ``p`` without being
uniformly ``q`` would give ``(0, 0, 0)``; it is reported as ``(1, 1, 0)``
and flagged ``mixed``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .quantlogic import CONTEXTS, FiniteModel, Form
from .values import (
    ASTI_NASTI,
    AVAKTAVYAM,
    TruthValue,
    V1, V2, V3, V4, V5, V6, V7,
)

__all__ = [
    "DerivedTriplet",
    "derive_triplet",
    "combine_contexts",
    "ContradictionReport",
    "verify_no_intra_context_contradiction",
    "realize_value",
    "VALUE_FORMS",
]


@dataclass(frozen=True)
class DerivedTriplet:
    context: str
    value: TruthValue
    vacuous: bool = False
    mixed: bool = False
    proposition: str = "p"

    @property
    def uniform(self) -> bool:
        return not (self.vacuous or self.mixed)

    def to_json(self) -> dict:
        return {
            "context": self.context,
            "proposition": self.proposition,
            "value": list(self.value.bits),
            "name": self.value.name.name,
            "vacuous": self.vacuous,
            "mixed": self.mixed,
        }


def derive_triplet(m: FiniteModel, context: str, proposition: str = "p") -> DerivedTriplet:
    """Read the triple of ``p`` in one context of ``m``.

    ``proposition`` only labels the result; the model carries a single
    property predicate.
    """
    ext = m.context(context)
    if not ext:
        return DerivedTriplet(context, AVAKTAVYAM, vacuous=True, proposition=proposition)
    t = int(ext <= m.p)
    f = int(not (ext & m.p))
    u = int(ext <= m.q)
    if not (t or f or u):
        return DerivedTriplet(context, ASTI_NASTI, mixed=True, proposition=proposition)
    return DerivedTriplet(context, TruthValue(t, f, u), proposition=proposition)


def combine_contexts(m: FiniteModel) -> TruthValue:
    """OR together the triples derived from every declared context."""
    bits = [0, 0, 0]
    for c in m.declared_contexts:
        v = derive_triplet(m, c).value
        bits = [a | b for a, b in zip(bits, v.bits)]
    return TruthValue(*bits)


@dataclass(frozen=True)
class ContradictionReport:
    seed: int
    samples: int
    max_domain: int
    contexts_checked: int = 0
    uniform_contexts: int = 0
    vacuous_contexts: int = 0
    mixed_contexts: int = 0
    violations: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.violations


def _random_model(rng: random.Random, max_domain: int) -> FiniteModel:
    n = rng.randint(1, max_domain)
    domain = tuple(f"e{i}" for i in range(n))

    def subset():
        return frozenset(x for x in domain if rng.random() < 0.5)

    return FiniteModel(domain, subset(), subset(), subset(), subset(), subset())


def verify_no_intra_context_contradiction(
    sample: int = 1000, max_domain: int = 4, seed: int = 0
) -> ContradictionReport:
    """Sample random models and confirm no uniform context derives t = f = 1."""
    if max_domain > 4:
        raise ValueError("max_domain must be at most 4")
    if max_domain < 1:
        raise ValueError("max_domain must be at least 1")
    rng = random.Random(seed)
    checked = uniform = vacuous = mixed = 0
    violations = []
    for _ in range(sample):
        m = _random_model(rng, max_domain)
        for c in CONTEXTS:
            d = derive_triplet(m, c)
            checked += 1
            vacuous += d.vacuous
            mixed += d.mixed
            if d.uniform:
                uniform += 1
                if d.value.t and d.value.f:
                    violations.append((m, c))
    return ContradictionReport(seed, sample, max_domain, checked, uniform, vacuous, mixed,
                               tuple(violations))


# value -> form that its realizing model satisfies
VALUE_FORMS = {V1: Form.I, V2: Form.II, V3: Form.IV, V4: Form.III,
               V5: Form.V, V6: Form.VI, V7: Form.VII}


def realize_value(v: TruthValue) -> FiniteModel:
    """Build a small model, with pairwise disjoint contexts, expressing ``v``.

    Each set component gets its own context: ``t`` a context inside ``p``,
    ``f`` a context outside ``p``.  ``u`` gets a context inside ``q``; when
    ``u`` is the only component that context is split on ``p`` so it
    contributes neither ``t`` nor ``f``.
    """
    one, two, three = ("e0",), ("e0", "e1"), ("e0", "e1", "e2")
    s = frozenset
    if v == V1:
        return FiniteModel(one, phi=s({"e0"}), p=s({"e0"}), q=s())
    if v == V2:
        return FiniteModel(one, phi=s({"e0"}), p=s(), q=s())
    if v == V3:
        return FiniteModel(two, phi=s({"e0"}), phi2=s({"e1"}), p=s({"e0"}), q=s())
    if v == V4:
        return FiniteModel(two, phi=s({"e0", "e1"}), p=s({"e0"}), q=s({"e0", "e1"}))
    if v == V5:
        return FiniteModel(two, phi=s({"e0"}), phi2=s({"e1"}), p=s({"e0", "e1"}), q=s({"e1"}))
    if v == V6:
        return FiniteModel(two, phi=s({"e0"}), phi2=s({"e1"}), p=s(), q=s({"e1"}))
    if v == V7:
        return FiniteModel(three, phi=s({"e0"}), phi2=s({"e1"}), phi3=s({"e2"}),
                           p=s({"e0"}), q=s({"e2"}))
    raise ValueError(f"not a truth value: {v!r}")

