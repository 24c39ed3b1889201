"""Text syntax for tree elements.

    x y X Y          generators, X = x^-1, Y = y^-1
    ( ... )          grouping; juxtaposition multiplies
    a^k, a^-1        integer powers
    comm(a, b)       a^-1 b^-1 a b
    z(n)             the catalog element z_n

Whitespace is ignored; ``;`` separates the entries of a tuple.
"""

from __future__ import annotations

import re

from .catalog import commutator, z
from .tree import TreeElement, TreeParams, Word, power, product

_TOKEN = re.compile(r"\s*(comm|z|[xyXY()^,]|-?\d+)")


class WordSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r} at {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, p: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.p = p

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise WordSyntaxError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self) -> TreeElement:
        factors = []
        while self.peek() not in (None, ")", ","):
            factors.append(self.factor())
        return product(*factors)

    def factor(self) -> TreeElement:
        e = self.atom()
        while self.peek() == "^":
            self.take("^")
            tok = self.take()
            if not re.fullmatch(r"-?\d+", tok):
                raise WordSyntaxError(f"bad exponent {tok!r}")
            e = power(e, int(tok))
        return e

    def atom(self) -> TreeElement:
        tok = self.take()
        if tok in ("x", "y", "X", "Y"):
            return Word(tok)
        if tok == "(":
            e = self.expr()
            self.take(")")
            return e
        if tok == "comm":
            self.take("(")
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take(")")
            return commutator(a, b)
        if tok == "z":
            self.take("(")
            n = self.take()
            if not n.isdigit():
                raise WordSyntaxError(f"z(n) needs a positive integer, got {n!r}")
            self.take(")")
            try:
                return z(int(n), self.p)
            except ValueError as exc:
                raise WordSyntaxError(str(exc)) from exc
        raise WordSyntaxError(f"unexpected token {tok!r}")


def parse_element(text: str, p: int = 3) -> TreeElement:
    TreeParams(p)
    parser = _Parser(text, p)
    e = parser.expr()
    if parser.peek() is not None:
        raise WordSyntaxError(f"unexpected token {parser.peek()!r}")
    return e


def parse_tuple(text: str, p: int = 3) -> tuple:
    return tuple(parse_element(part, p) for part in text.split(";"))


def parse_word(text: str) -> Word:
    """Plain generator word; rejects anything but x, y, X, Y."""
    e = parse_element(text)
    if not isinstance(e, Word):
        raise WordSyntaxError(f"{text!r} is not a plain word")
    return e
