"""Finite-domain checker for the seven quantified predication forms.

A :class:`FiniteModel` fixes a finite domain and unary predicates: the
conditions ``phi``, ``phi2``, ``phi3`` (contexts), the property ``p`` and
the indescribability predicate ``q``.  The forms are::

    I    forall x. phi(x) -> p(x)
    II   forall x. phi(x) -> !p(x)
    III  forall x. phi(x) -> q(x)
    IV   forall x. (phi(x) -> p(x))  & (phi2(x) -> !p(x))  & distinct(phi, phi2)
    V    forall x. (phi(x) -> p(x))  & (phi2(x) -> q(x))   & distinct(phi, phi2)
    VI   forall x. (phi(x) -> !p(x)) & (phi2(x) -> q(x))   & distinct(phi, phi2)
    VII  forall x. (phi(x) -> p(x))  & (phi2(x) -> !p(x)) & (phi3(x) -> q(x))
                   & distinct for each of (phi, phi2), (phi2, phi3), (phi, phi3)

How ``distinct`` closes over ``x`` is selected by :class:`Distinctness`.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

__all__ = [
    "Form",
    "Distinctness",
    "FiniteModel",
    "FormVerdict",
    "MissingContextError",
    "MAX_SEARCH_DOMAIN",
    "CONTEXTS",
    "FORM_CONTEXTS",
    "check_form",
    "check_all_forms",
    "find_joint_model",
    "load_model",
    "model_from_dict",
]

MAX_SEARCH_DOMAIN = 6
CONTEXTS = ("phi", "phi2", "phi3")


class Form(enum.Enum):
    I = "i"
    II = "ii"
    III = "iii"
    IV = "iv"
    V = "v"
    VI = "vi"
    VII = "vii"

    @classmethod
    def parse(cls, text: str) -> "Form":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown form {text!r}; expected one of i..vii") from None


class Distinctness(enum.Enum):
    DISJOINT = "disjoint"          # forall x. !(phi(x) & phi'(x))
    NOT_COEXTENSIVE = "notcoext"   # exists x. !(phi(x) <-> phi'(x))
    POINTWISE_XOR = "xor"          # forall x. !(phi(x) <-> phi'(x))


# clauses per form: (context, requirement) with requirement in {"p", "not p", "q"}
_CLAUSES: dict[Form, tuple[tuple[str, str], ...]] = {
    Form.I: (("phi", "p"),),
    Form.II: (("phi", "not p"),),
    Form.III: (("phi", "q"),),
    Form.IV: (("phi", "p"), ("phi2", "not p")),
    Form.V: (("phi", "p"), ("phi2", "q")),
    Form.VI: (("phi", "not p"), ("phi2", "q")),
    Form.VII: (("phi", "p"), ("phi2", "not p"), ("phi3", "q")),
}

_DISTINCT_PAIRS: dict[Form, tuple[tuple[str, str], ...]] = {
    Form.I: (), Form.II: (), Form.III: (),
    Form.IV: (("phi", "phi2"),),
    Form.V: (("phi", "phi2"),),
    Form.VI: (("phi", "phi2"),),
    Form.VII: (("phi", "phi2"), ("phi2", "phi3"), ("phi", "phi3")),
}

FORM_CONTEXTS: dict[Form, tuple[str, ...]] = {
    f: tuple(c for c in CONTEXTS if any(c == k for k, _ in _CLAUSES[f]))
    for f in Form
}


class MissingContextError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteModel:
    domain: tuple[str, ...]
    phi: frozenset
    p: frozenset
    q: frozenset
    phi2: Optional[frozenset] = None
    phi3: Optional[frozenset] = None

    def __post_init__(self):
        if not self.domain:
            raise ValueError("domain must be nonempty")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("domain elements must be distinct")
        universe = set(self.domain)
        for name in ("phi", "phi2", "phi3", "p", "q"):
            ext = getattr(self, name)
            if ext is None:
                if name in ("phi", "p", "q"):
                    raise ValueError(f"{name} is required")
                continue
            ext = frozenset(ext)
            object.__setattr__(self, name, ext)
            stray = ext - universe
            if stray:
                raise ValueError(f"{name} has elements outside the domain: {sorted(stray)}")

    def context(self, name: str) -> frozenset:
        if name not in CONTEXTS:
            raise MissingContextError(f"unknown context {name!r}; expected one of {', '.join(CONTEXTS)}")
        ext = getattr(self, name)
        if ext is None:
            raise MissingContextError(f"context {name!r} is not declared in this model")
        return ext

    @property
    def declared_contexts(self) -> tuple[str, ...]:
        return tuple(c for c in CONTEXTS if getattr(self, c) is not None)

    def to_json(self) -> dict:
        out = {"domain": list(self.domain)}
        for name in ("phi", "phi2", "phi3", "p", "q"):
            ext = getattr(self, name)
            if ext is not None:
                out[name] = [x for x in self.domain if x in ext]
        return out


@dataclass(frozen=True)
class FormVerdict:
    form: Form
    holds: bool
    witness: Optional[str] = None
    distinctness_failure: Optional[tuple[str, str]] = None

    def to_json(self) -> dict:
        return {
            "form": self.form.name,
            "holds": self.holds,
            "witness": self.witness,
            "distinctness_failure": list(self.distinctness_failure) if self.distinctness_failure else None,
        }


def _clause_ok(requirement: str, in_p: bool, in_q: bool) -> bool:
    if requirement == "p":
        return in_p
    if requirement == "not p":
        return not in_p
    return in_q


def _element_ok(form: Form, member: Mapping[str, bool], in_p: bool, in_q: bool) -> bool:
    return all(not member[ctx] or _clause_ok(req, in_p, in_q) for ctx, req in _CLAUSES[form])


def _distinct(a: frozenset, b: frozenset, domain: Sequence[str], mode: Distinctness) -> bool:
    if mode is Distinctness.DISJOINT:
        return not (a & b)
    if mode is Distinctness.NOT_COEXTENSIVE:
        return a != b
    return all((x in a) != (x in b) for x in domain)


def check_form(m: FiniteModel, form: Form, d: Distinctness = Distinctness.DISJOINT) -> FormVerdict:
    """Evaluate one form classically over ``m``.

    A failure of the quantified body reports the first falsifying element
    (domain order); otherwise a distinctness failure reports the pair.
    """
    form = Form(form)
    d = Distinctness(d)
    exts = {c: m.context(c) for c in FORM_CONTEXTS[form]}
    for x in m.domain:
        member = {c: x in ext for c, ext in exts.items()}
        if not _element_ok(form, member, x in m.p, x in m.q):
            return FormVerdict(form, False, witness=x)
    for a, b in _DISTINCT_PAIRS[form]:
        if not _distinct(exts[a], exts[b], m.domain, d):
            return FormVerdict(form, False, distinctness_failure=(a, b))
    return FormVerdict(form, True)


def check_all_forms(m: FiniteModel, d: Distinctness = Distinctness.DISJOINT) -> list[FormVerdict]:
    return [check_form(m, f, d) for f in Form]


def _subsets(domain: Sequence[str]):
    """Subsets as a binary counter; element i is bit i (so ``e0`` moves fastest)."""
    n = len(domain)
    for mask in range(1 << n):
        yield frozenset(domain[i] for i in range(n) if mask >> i & 1)


def find_joint_model(
    domain_size: int,
    forms: Iterable[Form],
    d: Distinctness = Distinctness.DISJOINT,
    nonvacuous: bool = False,
) -> Optional[FiniteModel]:
    """Search for the first model over ``{e0, ..}`` satisfying every form.

    Candidates are enumerated in a fixed order: predicate extensions
    ``phi, phi2, phi3, p, q`` as nested loops (``phi`` outermost), each
    running through subsets as a binary counter.  Only contexts that some
    requested form mentions are enumerated; the rest are left undeclared.

    By default a form may hold vacuously (an empty context), exactly as in
    :func:`check_form`.  With ``nonvacuous`` every mentioned context must be
    nonempty.  Forms sharing a context can then clash: IV and VI, for
    instance, demand both ``phi <= p`` and ``phi & p == {}``.

    Returns ``None`` when no model of this size exists.
    """
    if domain_size < 1:
        raise ValueError("domain_size must be at least 1")
    if domain_size > MAX_SEARCH_DOMAIN:
        raise ValueError(f"domain_size {domain_size} exceeds the search cap of {MAX_SEARCH_DOMAIN}")
    forms = sorted(set(Form(f) for f in forms), key=list(Form).index)
    domain = tuple(f"e{i}" for i in range(domain_size))
    used = [c for c in CONTEXTS if any(c in FORM_CONTEXTS[f] for f in forms)]
    pairs = [pair for f in forms for pair in _DISTINCT_PAIRS[f]]
    subsets = list(_subsets(domain))
    context_choices = [subsets[1:] if nonvacuous else subsets for _ in used]

    for combo in itertools.product(*context_choices):
        exts = dict(zip(used, combo))
        if not all(_distinct(exts[a], exts[b], domain, d) for a, b in pairs):
            continue
        # the quantified bodies constrain each element independently, so the
        # first (p, q) in counter order is found bit by bit, p before q
        p_bits, q_bits = [], []
        for x in domain:
            member = {c: x in exts.get(c, ()) for c in CONTEXTS}
            options = [(ip, iq) for ip in (False, True) for iq in (False, True)
                       if all(_element_ok(f, member, ip, iq) for f in forms)]
            if not options:
                break
            p_bits.append(options[0][0])
        else:
            # fix p at its least feasible value, then choose q given p
            for x, ip in zip(domain, p_bits):
                member = {c: x in exts.get(c, ()) for c in CONTEXTS}
                q_bits.append(next(iq for iq in (False, True)
                                   if all(_element_ok(f, member, ip, iq) for f in forms)))
            p = frozenset(x for x, b in zip(domain, p_bits) if b)
            q = frozenset(x for x, b in zip(domain, q_bits) if b)
            return FiniteModel(domain, exts.get("phi", frozenset()), p, q,
                               exts.get("phi2"), exts.get("phi3"))
    return None


def model_from_dict(data: Mapping) -> FiniteModel:
    for key in ("domain", "phi", "p", "q"):
        if key not in data:
            raise ValueError(f"model is missing key {key!r}")
    domain = tuple(data["domain"])

    def ext(key):
        return frozenset(data[key]) if key in data else None

    return FiniteModel(domain, ext("phi"), ext("p"), ext("q"), ext("phi2"), ext("phi3"))


def load_model(path: str | Path) -> FiniteModel:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError("model file must hold a JSON object")
    return model_from_dict(data)
