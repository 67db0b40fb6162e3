"""Propositional formulas: AST, parser and minimal-parenthesis printer.

Grammar (lowest to highest precedence)::

    formula  := implica
    implica  := disjunct ( "->" implica )?        right-associative
    disjunct := conjunct ( "|" conjunct )*        left-associative
    conjunct := unary ( "&" unary )*              left-associative
    unary    := "!" unary | atom | "(" formula ")"
    atom     := letter ( letter | digit | "_" )*

``~``/``¬``, ``∧``, ``∨`` and ``→`` are accepted as input aliases; output
is always ASCII.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Atom", "Not", "And", "Or", "Implies", "Formula",
    "FormulaSyntaxError", "parse", "parse_list", "to_text", "atoms_of",
]


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not:
    operand: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


Formula = Union[Atom, Not, And, Or, Implies]


class FormulaSyntaxError(ValueError):
    """Raised on malformed input; ``offset`` is 1-based."""

    def __init__(self, message: str, offset: int):
        self.message = message
        self.offset = offset
        super().__init__(f"syntax error at offset {offset}: {message}")


# token kinds
_NOT, _AND, _OR, _IMP, _LP, _RP, _ATOM, _END = (
    "!", "&", "|", "->", "(", ")", "atom", "end of input")

_SINGLE = {
    "!": _NOT, "~": _NOT, "¬": _NOT,
    "&": _AND, "∧": _AND,
    "|": _OR, "∨": _OR,
    "→": _IMP,
    "(": _LP, ")": _RP,
}


def _is_letter(ch: str) -> bool:
    return ch.isascii() and ch.isalpha()


def _is_ident(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch == "_")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _SINGLE:
            tokens.append((_SINGLE[ch], ch, i + 1))
            i += 1
        elif ch == "-":
            if text.startswith("->", i):
                tokens.append((_IMP, "->", i + 1))
                i += 2
            else:
                raise FormulaSyntaxError("expected '->' after '-'", i + 1)
        elif _is_letter(ch):
            j = i + 1
            while j < n and _is_ident(text[j]):
                j += 1
            tokens.append((_ATOM, text[i:j], i + 1))
            i = j
        else:
            raise FormulaSyntaxError(f"unexpected character {ch!r}", i + 1)
    tokens.append((_END, "", n + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind!r}, found {_describe(tok)}", tok[2])
        return self.advance()

    def formula(self) -> Formula:
        return self.implica()

    def implica(self) -> Formula:
        left = self.disjunct()
        if self.peek()[0] == _IMP:
            self.advance()
            return Implies(left, self.implica())
        return left

    def disjunct(self) -> Formula:
        node = self.conjunct()
        while self.peek()[0] == _OR:
            self.advance()
            node = Or(node, self.conjunct())
        return node

    def conjunct(self) -> Formula:
        node = self.unary()
        while self.peek()[0] == _AND:
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        # negation prefixes handled iteratively so "!!!!...P" cannot blow the stack
        negations = 0
        while self.peek()[0] == _NOT:
            self.advance()
            negations += 1
        tok = self.peek()
        if tok[0] == _ATOM:
            self.advance()
            node = Atom(tok[1])
        elif tok[0] == _LP:
            self.advance()
            node = self.formula()
            self.expect(_RP)
        else:
            raise FormulaSyntaxError(f"expected formula, found {_describe(tok)}", tok[2])
        for _ in range(negations):
            node = Not(node)
        return node


def _describe(tok) -> str:
    kind, text, _ = tok
    if kind == _END:
        return "end of input"
    if kind == _ATOM:
        return f"atom {text!r}"
    return repr(text)


def parse(text: str) -> Formula:
    """Parse a single formula, raising :class:`FormulaSyntaxError` on failure."""
    parser = _Parser(text)
    if parser.peek()[0] == _END:
        raise FormulaSyntaxError("empty formula", parser.peek()[2])
    try:
        node = parser.formula()
    except RecursionError:
        raise FormulaSyntaxError("formula nested too deeply", 1) from None
    tok = parser.peek()
    if tok[0] != _END:
        raise FormulaSyntaxError(f"unexpected {_describe(tok)}", tok[2])
    return node


def parse_list(text: str) -> list[Formula]:
    """Parse a comma-separated list of formulas; blank input gives ``[]``.

    Offsets in errors refer to positions in the whole string.
    """
    if not text.strip():
        return []
    result = []
    start = 0
    for piece in text.split(","):
        try:
            result.append(parse(piece))
        except FormulaSyntaxError as exc:
            raise FormulaSyntaxError(exc.message, start + exc.offset) from None
        start += len(piece) + 1
    return result


_PREC = {Implies: 1, Or: 2, And: 3, Not: 4, Atom: 5}
_SYMBOL = {Implies: "->", Or: "|", And: "&"}


def to_text(f: Formula) -> str:
    """Minimally parenthesised ASCII rendering; ``parse(to_text(f)) == f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = to_text(f.operand)
        if _PREC[type(f.operand)] < _PREC[Not]:
            inner = f"({inner})"
        return "!" + inner
    prec = _PREC[type(f)]
    left, right = to_text(f.left), to_text(f.right)
    lp, rp = _PREC[type(f.left)], _PREC[type(f.right)]
    if isinstance(f, Implies):
        wrap_left, wrap_right = lp <= prec, rp < prec
    else:
        wrap_left, wrap_right = lp < prec, rp <= prec
    if wrap_left:
        left = f"({left})"
    if wrap_right:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


def _walk_atoms(f: Formula) -> Iterator[Atom]:
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            yield node
        elif isinstance(node, Not):
            stack.append(node.operand)
        else:
            stack.append(node.right)
            stack.append(node.left)


def atoms_of(*formulas: Formula) -> list[Atom]:
    """Distinct atoms in first-occurrence order (left to right, depth first)."""
    return list(dict.fromkeys(a for f in formulas for a in _walk_atoms(f)))
