"""Compact text forms for sequence specs, radix words, and algebras.

The sequence grammar:

    spec  := json-object | entries | entries ',' tailcall | tailcall
    entries := rational (',' rational)*
    tailcall := 'geo' '(' rational ',' rational ')'
              | 'radix' '(' rational ';' word ')'
    word  := int+ | int* '|' int+

so ``1/2, 1/4, 1/4`` is a finite sequence, ``geo(1/2, 1/2)`` the halving
sequence, ``1/3, 1/3, geo(1/6, 1/2)`` a prefix with a geometric tail, and
``radix(1; 3 | 2)`` the pattern of the word 3, 2, 2, 2, ... A word without
a bar is taken as fully periodic. Anything starting with '{' is parsed as
the equivalent JSON document instead.

Parse errors carry the character position where reading failed.
"""

from __future__ import annotations

import json
import re
from typing import Optional

from .core import make_rational
from .errors import ParseError
from .sequences import (
    AlgebraSpec,
    GeometricTail,
    MixedRadixTail,
    RadixWord,
    SequenceModel,
    TailModel,
    ZeroTail,
)
from .serialize import algebra_from_doc, model_from_doc, word_from_doc

_RATIONAL = re.compile(r"-?\d+(?:/-?\d+)?")
_INTEGER = re.compile(r"\d+")
_NAME = re.compile(r"[A-Za-z_]+")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def expect(self, char: str) -> None:
        self.skip_ws()
        if self.peek() != char:
            raise ParseError(f"expected '{char}'", self.pos)
        self.pos += 1

    def match(self, pattern: re.Pattern) -> Optional[str]:
        self.skip_ws()
        found = pattern.match(self.text, self.pos)
        if found is None:
            return None
        self.pos = found.end()
        return found.group()


def _parse_rational_token(cur: _Cursor):
    token = cur.match(_RATIONAL)
    if token is None:
        raise ParseError("expected a rational number", cur.pos)
    if "/" in token:
        num, den = token.split("/")
        return make_rational(int(num), int(den))
    return make_rational(int(token), 1)


def _parse_int_token(cur: _Cursor) -> int:
    token = cur.match(_INTEGER)
    if token is None:
        raise ParseError("expected an integer", cur.pos)
    return int(token)


def _parse_word_body(cur: _Cursor) -> RadixWord:
    """Integers with an optional '|' separating head from period."""
    first_group: list[int] = []
    second_group: Optional[list[int]] = None
    while True:
        cur.skip_ws()
        ch = cur.peek()
        if ch == "|":
            if second_group is not None:
                raise ParseError("a word may contain only one '|'", cur.pos)
            cur.pos += 1
            second_group = []
            continue
        if ch.isdigit():
            target = first_group if second_group is None else second_group
            target.append(_parse_int_token(cur))
            continue
        break
    if second_group is None:
        if not first_group:
            raise ParseError("expected a radix word", cur.pos)
        return RadixWord((), tuple(first_group))
    if not second_group:
        raise ParseError("expected a period after '|'", cur.pos)
    return RadixWord(tuple(first_group), tuple(second_group))


def _parse_tail_call(cur: _Cursor, name: str, name_pos: int) -> TailModel:
    if name == "geo":
        cur.expect("(")
        first = _parse_rational_token(cur)
        cur.expect(",")
        ratio = _parse_rational_token(cur)
        cur.expect(")")
        return GeometricTail(first, ratio)
    if name == "radix":
        cur.expect("(")
        scale = _parse_rational_token(cur)
        cur.expect(";")
        word = _parse_word_body(cur)
        cur.expect(")")
        return MixedRadixTail(scale, word)
    raise ParseError(f"unknown tail '{name}'", name_pos)


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None


def parse_spec(text: str) -> SequenceModel:
    """A sequence model from its DSL or JSON form."""
    if text.lstrip().startswith("{"):
        return model_from_doc(_load_json(text))
    cur = _Cursor(text)
    prefix = []
    tail: TailModel = ZeroTail()
    while True:
        cur.skip_ws()
        name_pos = cur.pos
        name = cur.match(_NAME)
        if name is not None:
            tail = _parse_tail_call(cur, name, name_pos)
            break
        prefix.append(_parse_rational_token(cur))
        cur.skip_ws()
        if cur.peek() == ",":
            cur.pos += 1
            continue
        break
    if not cur.at_end():
        raise ParseError("unexpected trailing input", cur.pos)
    return SequenceModel(tuple(prefix), tail)


def parse_word(text: str) -> RadixWord:
    """A radix word from its DSL or JSON form."""
    if text.lstrip().startswith("{"):
        return word_from_doc(_load_json(text))
    cur = _Cursor(text)
    word = _parse_word_body(cur)
    if not cur.at_end():
        raise ParseError("unexpected trailing input", cur.pos)
    return word


def parse_algebra(text: str) -> AlgebraSpec:
    """An algebra spec; JSON only, there is no shorthand for these."""
    stripped = text.lstrip()
    if not stripped.startswith("{"):
        raise ParseError("an algebra spec must be a JSON object", 0)
    return algebra_from_doc(_load_json(text))
