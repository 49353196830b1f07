"""Propositional formulas: AST, parser, evaluation, atom extraction.

Connectives in text form are ``~`` ``&`` ``|`` ``->`` ``<->`` with the
usual precedence (negation binds tightest, biconditional loosest);
``&``/``|`` associate left, ``->``/``<->`` associate right.  The unicode
spellings ``¬ ∧ ∨ → ↔`` are accepted on input.  ``true`` and ``false``
are constants, never atoms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import FormulaSyntaxError, MissingAtom

ATOM_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
RESERVED = frozenset({"true", "false"})


class Formula:
    """Base class of the formula AST.  All nodes are immutable."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not ATOM_NAME.fullmatch(self.name) or self.name in RESERVED:
            raise ValueError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


TRUE = Const(True)
FALSE = Const(False)

_TOKEN_SPELLINGS = [
    ("<->", "IFF"),
    ("->", "IMP"),
    ("↔", "IFF"),
    ("→", "IMP"),
    ("~", "NOT"),
    ("¬", "NOT"),
    ("&", "AND"),
    ("∧", "AND"),
    ("|", "OR"),
    ("∨", "OR"),
    ("(", "LPAREN"),
    (")", "RPAREN"),
]


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int  # byte offset into the UTF-8 encoding of the input


def _tokenize(text: str) -> Iterator[_Token]:
    pos = 0
    byte_pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            byte_pos += len(ch.encode("utf-8"))
            continue
        for spelling, kind in _TOKEN_SPELLINGS:
            if text.startswith(spelling, pos):
                yield _Token(kind, spelling, byte_pos)
                pos += len(spelling)
                byte_pos += len(spelling.encode("utf-8"))
                break
        else:
            m = ATOM_NAME.match(text, pos)
            if m is None:
                raise FormulaSyntaxError(
                    f"unexpected character {ch!r}", byte_pos,
                    "an operator, a parenthesis, or an identifier")
            yield _Token("IDENT", m.group(), byte_pos)
            pos = m.end()
            byte_pos += len(m.group().encode("utf-8"))
    yield _Token("EOF", "", byte_pos)


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: str):
        tok = self.current
        what = "end of input" if tok.kind == "EOF" else repr(tok.text)
        raise FormulaSyntaxError(f"unexpected {what}", tok.offset, expected)

    def parse_iff(self) -> Formula:
        left = self.parse_imp()
        if self.current.kind == "IFF":
            self.advance()
            return Iff(left, self.parse_iff())
        return left

    def parse_imp(self) -> Formula:
        left = self.parse_or()
        if self.current.kind == "IMP":
            self.advance()
            return Imp(left, self.parse_imp())
        return left

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while self.current.kind == "OR":
            self.advance()
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while self.current.kind == "AND":
            self.advance()
            left = And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        if self.current.kind == "NOT":
            self.advance()
            return Not(self.parse_unary())
        return self.parse_primary()

    def parse_primary(self) -> Formula:
        tok = self.current
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.parse_iff()
            if self.current.kind != "RPAREN":
                self.fail("a closing parenthesis")
            self.advance()
            return inner
        if tok.kind == "IDENT":
            self.advance()
            if tok.text == "true":
                return TRUE
            if tok.text == "false":
                return FALSE
            return Atom(tok.text)
        self.fail("an identifier, a constant, '~', or '('")
        raise AssertionError("unreachable")


def parse(text: str) -> Formula:
    """Parse formula text into an AST, or raise FormulaSyntaxError."""
    parser = _Parser(list(_tokenize(text)))
    result = parser.parse_iff()
    if parser.current.kind != "EOF":
        parser.fail("end of input or an operator")
    return result


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    """Classical two-valued evaluation under a total atom assignment."""
    if isinstance(f, Atom):
        try:
            return bool(assignment[f.name])
        except KeyError:
            raise MissingAtom(f.name) from None
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not evaluate(f.operand, assignment)
    if isinstance(f, And):
        return evaluate(f.left, assignment) and evaluate(f.right, assignment)
    if isinstance(f, Or):
        return evaluate(f.left, assignment) or evaluate(f.right, assignment)
    if isinstance(f, Imp):
        return (not evaluate(f.left, assignment)) or evaluate(f.right, assignment)
    if isinstance(f, Iff):
        return evaluate(f.left, assignment) == evaluate(f.right, assignment)
    raise TypeError(f"not a formula: {f!r}")


def atoms(f: Formula) -> tuple[str, ...]:
    """All atom names of ``f``, sorted lexicographically, without duplicates."""
    seen: set[str] = set()

    def walk(node: Formula):
        if isinstance(node, Atom):
            seen.add(node.name)
        elif isinstance(node, Not):
            walk(node.operand)
        elif isinstance(node, (And, Or, Imp, Iff)):
            walk(node.left)
            walk(node.right)

    walk(f)
    return tuple(sorted(seen))


_BINARY_TEXT = {And: "&", Or: "|", Imp: "->", Iff: "<->"}


def to_text(f: Formula) -> str:
    """Canonical ASCII rendering with full parenthesization.

    ``parse(to_text(f))`` is structurally equal to ``f``.
    """
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        return f"(~{to_text(f.operand)})"
    op = _BINARY_TEXT.get(type(f))
    if op is None:
        raise TypeError(f"not a formula: {f!r}")
    return f"({to_text(f.left)} {op} {to_text(f.right)})"
