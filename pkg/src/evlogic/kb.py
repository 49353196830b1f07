"""Line-oriented file formats for knowledge bases, masses, and joints.

Every format is UTF-8 text where ``#`` starts a comment and blank lines
are skipped.  Numbers are exact: ``a/b`` rationals or decimal literals,
with ``0.7`` read as 7/10 rather than a binary float.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    DuplicateName,
    EmptyFocalElement,
    KBParseError,
    MixedProbAndInterval,
    UnknownName,
)
from .evidential import EvidentialInterval, MassFunction, mass_function
from .formula import Formula, FormulaSyntaxError, parse
from .problog import JointDistribution, joint_distribution
from .semantics import InterpretationSpace, SentenceSet, index_to_vector, rows_satisfying

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = ("true", "false")


@dataclass(frozen=True)
class KnowledgeBase:
    """Sentences plus optional probabilities or intervals and queries."""

    sentences: SentenceSet
    point_probs: Optional[dict[str, Fraction]]
    intervals: Optional[dict[str, EvidentialInterval]]
    queries: tuple[Formula, ...]


def parse_number(text: str, line: Optional[int] = None) -> Fraction:
    """An exact rational from ``a/b`` or decimal notation, within [0, 1]."""
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise KBParseError(f"bad number {text!r}", line) from None
    if not 0 <= value <= 1:
        raise KBParseError(f"number {text} outside [0, 1]", line)
    return value


def _logical_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body


def _check_name(name: str, lineno: int) -> str:
    if not _NAME.match(name) or name in _RESERVED:
        raise KBParseError(f"bad sentence name {name!r}", lineno)
    return name


def _parse_formula(text: str, lineno: int) -> Formula:
    try:
        return parse(text)
    except FormulaSyntaxError as exc:
        raise KBParseError(str(exc), lineno) from None


def _split_directive(body: str, lineno: int) -> tuple[str, str]:
    parts = body.split(None, 1)
    if len(parts) != 2:
        raise KBParseError(f"incomplete directive {body!r}", lineno)
    return parts[0], parts[1].strip()


def load_kb(path: str) -> KnowledgeBase:
    """Read a knowledge-base file.

    Directives: ``sentence <name> : <formula>``, ``prob <name> = <number>``,
    ``interval <name> = [<number>, <number>]``, ``query <formula>``.
    The order of ``sentence`` lines fixes the sentence indexing; a file
    may carry probabilities or intervals but never both.
    """
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    sentences: list[tuple[str, Formula]] = []
    probs: dict[str, Fraction] = {}
    intervals: dict[str, EvidentialInterval] = {}
    prob_lines: dict[str, int] = {}
    interval_lines: dict[str, int] = {}
    queries: list[Formula] = []
    for lineno, body in _logical_lines(text):
        keyword, rest = _split_directive(body, lineno)
        if keyword == "sentence":
            name_part, sep, formula_part = rest.partition(":")
            if not sep:
                raise KBParseError("expected `sentence <name> : <formula>`", lineno)
            name = _check_name(name_part.strip(), lineno)
            if any(name == taken for taken, _ in sentences):
                raise DuplicateName(f"sentence {name!r} declared twice", lineno)
            sentences.append((name, _parse_formula(formula_part.strip(), lineno)))
        elif keyword == "prob":
            name_part, sep, number_part = rest.partition("=")
            if not sep:
                raise KBParseError("expected `prob <name> = <number>`", lineno)
            name = name_part.strip()
            if name in prob_lines:
                raise DuplicateName(f"prob for {name!r} given twice", lineno)
            prob_lines[name] = lineno
            probs[name] = parse_number(number_part.strip(), lineno)
        elif keyword == "interval":
            name_part, sep, pair_part = rest.partition("=")
            if not sep:
                raise KBParseError(
                    "expected `interval <name> = [<number>, <number>]`", lineno)
            name = name_part.strip()
            if name in interval_lines:
                raise DuplicateName(f"interval for {name!r} given twice", lineno)
            interval_lines[name] = lineno
            match = re.match(r"\[\s*([^,\s\]]+)\s*,\s*([^,\s\]]+)\s*\]\Z",
                             pair_part.strip())
            if not match:
                raise KBParseError(f"bad interval {pair_part.strip()!r}", lineno)
            spt = parse_number(match.group(1), lineno)
            pls = parse_number(match.group(2), lineno)
            if spt > pls:
                raise KBParseError(f"interval [{spt}, {pls}] is inverted", lineno)
            intervals[name] = EvidentialInterval(spt, pls)
        elif keyword == "query":
            queries.append(_parse_formula(rest, lineno))
        else:
            raise KBParseError(f"unknown directive {keyword!r}", lineno)
    if not sentences:
        raise KBParseError("the file declares no sentences")
    if probs and intervals:
        raise MixedProbAndInterval(
            "a file may give probs or intervals, not both")
    declared = {name for name, _ in sentences}
    for name, lineno in list(prob_lines.items()) + list(interval_lines.items()):
        if name not in declared:
            raise UnknownName(f"no sentence named {name!r}", lineno)
    return KnowledgeBase(
        SentenceSet(tuple(sentences)),
        probs or None,
        intervals or None,
        tuple(queries),
    )


def load_mass(path: str, space: InterpretationSpace) -> MassFunction:
    """Read ``mass <formula> = <number>`` lines into a mass function.

    Formulas are over the sentence names; each extension is the set of
    frame rows satisfying the formula, with ``true`` denoting the whole
    frame.  Equal extensions merge by summation.
    """
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    pairs: list[tuple[frozenset[int], Fraction]] = []
    for lineno, body in _logical_lines(text):
        keyword, rest = _split_directive(body, lineno)
        if keyword != "mass":
            raise KBParseError(f"unknown directive {keyword!r}", lineno)
        formula_part, sep, number_part = rest.rpartition("=")
        if not sep:
            raise KBParseError("expected `mass <formula> = <number>`", lineno)
        f = _parse_formula(formula_part.strip(), lineno)
        extension = rows_satisfying(space, f)
        if not extension:
            raise EmptyFocalElement(
                f"line {lineno}: formula {formula_part.strip()!r} has an "
                "empty extension")
        pairs.append((extension, parse_number(number_part.strip(), lineno)))
    return mass_function(space, pairs)


def _parse_bitstring(text: str, n: int, lineno: int) -> int:
    if len(text) != n or set(text) - {"0", "1"}:
        raise KBParseError(f"expected {n} bits, got {text!r}", lineno)
    return int(text, 2)


def load_joint(
    path: str, space: InterpretationSpace, mode: str = "strict"
) -> JointDistribution:
    """Read ``p <bitstring> = <number>`` rows; unlisted rows get zero."""
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    probs = [Fraction(0)] * space.size
    seen: set[int] = set()
    for lineno, body in _logical_lines(text):
        keyword, rest = _split_directive(body, lineno)
        if keyword != "p":
            raise KBParseError(f"unknown directive {keyword!r}", lineno)
        bits_part, sep, number_part = rest.partition("=")
        if not sep:
            raise KBParseError("expected `p <bitstring> = <number>`", lineno)
        j = _parse_bitstring(bits_part.strip(), space.n, lineno)
        if j in seen:
            raise KBParseError(f"row {bits_part.strip()} listed twice", lineno)
        seen.add(j)
        probs[j] = parse_number(number_part.strip(), lineno)
    return joint_distribution(space, probs, mode)


def load_extension(
    path: str, n: int
) -> tuple[str, Formula, dict[tuple[bool, ...], Fraction]]:
    """Read an appended-sentence file for extending a joint.

    One ``sentence <name> : <formula>`` line names the new sentence;
    ``q <bitstring> = <number>`` rows give its conditional probability
    for each truth-value vector of the existing sentences, and
    ``q * = <number>`` fills every unlisted vector.
    """
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    name: Optional[str] = None
    f: Optional[Formula] = None
    table: dict[tuple[bool, ...], Fraction] = {}
    default: Optional[Fraction] = None
    for lineno, body in _logical_lines(text):
        keyword, rest = _split_directive(body, lineno)
        if keyword == "sentence":
            if name is not None:
                raise KBParseError("only one sentence line is allowed", lineno)
            name_part, sep, formula_part = rest.partition(":")
            if not sep:
                raise KBParseError("expected `sentence <name> : <formula>`", lineno)
            name = _check_name(name_part.strip(), lineno)
            f = _parse_formula(formula_part.strip(), lineno)
        elif keyword == "q":
            bits_part, sep, number_part = rest.partition("=")
            if not sep:
                raise KBParseError("expected `q <bitstring> = <number>`", lineno)
            bits = bits_part.strip()
            value = parse_number(number_part.strip(), lineno)
            if bits == "*":
                if default is not None:
                    raise KBParseError("only one `q * = ...` line is allowed", lineno)
                default = value
            else:
                v = index_to_vector(_parse_bitstring(bits, n, lineno), n)
                if v in table:
                    raise KBParseError(f"row {bits} listed twice", lineno)
                table[v] = value
        else:
            raise KBParseError(f"unknown directive {keyword!r}", lineno)
    if name is None or f is None:
        raise KBParseError("the file names no appended sentence")
    for j in range(1 << n):
        v = index_to_vector(j, n)
        if v not in table:
            if default is None:
                bits = "".join("1" if b else "0" for b in v)
                raise KBParseError(
                    f"no conditional for row {bits} and no `q * = ...` default")
            table[v] = default
    return name, f, table


def load_focal(path: str) -> tuple[Formula, ...]:
    """Read a focal-family file: one formula over sentence names per line."""
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    formulas = tuple(
        _parse_formula(body, lineno) for lineno, body in _logical_lines(text))
    if not formulas:
        raise KBParseError("the focal-family file lists no formulas")
    return formulas
