"""Regular expressions: parsing, an expression tree, printing, and measure.

Grammar (whitespace ignored)::

    expr   := term ('+' term)*
    term   := factor factor*
    factor := atom '*'*
    atom   := SYMBOL | '_' | '(' expr ')'

``_`` denotes the empty word.  The tree also has an ``Empty`` node (the empty
set) which the parser never produces but state elimination may.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .words import Alphabet, WordError


class RegexError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Eps:
    pass


@dataclass(frozen=True)
class Sym:
    index: int


@dataclass(frozen=True)
class Alt:
    parts: tuple


@dataclass(frozen=True)
class Cat:
    parts: tuple


@dataclass(frozen=True)
class Star:
    inner: object


Regex = Union[Empty, Eps, Sym, Alt, Cat, Star]

EMPTY = Empty()
EPS = Eps()


def alt(*parts: Regex) -> Regex:
    flat = []
    for p in parts:
        if isinstance(p, Empty):
            continue
        flat.extend(p.parts if isinstance(p, Alt) else (p,))
    if not flat:
        return EMPTY
    if len(flat) == 1:
        return flat[0]
    return Alt(tuple(flat))


def cat(*parts: Regex) -> Regex:
    flat = []
    for p in parts:
        if isinstance(p, Empty):
            return EMPTY
        if isinstance(p, Eps):
            continue
        flat.extend(p.parts if isinstance(p, Cat) else (p,))
    if not flat:
        return EPS
    if len(flat) == 1:
        return flat[0]
    return Cat(tuple(flat))


def star(r: Regex) -> Regex:
    if isinstance(r, (Empty, Eps)):
        return EPS
    if isinstance(r, Star):
        return r
    return Star(r)


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> Regex:
        if self.peek() is None:
            raise RegexError("empty expression", self.pos)
        r = self.expr()
        if self.peek() is not None:
            raise RegexError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return r

    def expr(self) -> Regex:
        parts = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            parts.append(self.term())
        return alt(*parts)

    def term(self) -> Regex:
        parts = []
        while True:
            c = self.peek()
            if c is None or c in "+)":
                break
            parts.append(self.factor())
        if not parts:
            raise RegexError("missing operand", self.pos)
        return cat(*parts)

    def factor(self) -> Regex:
        r = self.atom()
        while self.peek() == "*":
            self.pos += 1
            r = star(r)
        return r

    def atom(self) -> Regex:
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            r = self.expr()
            if self.peek() != ")":
                raise RegexError("unbalanced '('", start)
            self.pos += 1
            return r
        if c == "_":
            self.pos += 1
            return EPS
        if c in ("*", ")", "+"):
            raise RegexError(f"unexpected {c!r}", start)
        try:
            i = self.alphabet.index(c)
        except WordError:
            raise RegexError(f"unknown symbol {c!r}", start) from None
        self.pos += 1
        return Sym(i)


def parse(text: str, alphabet: Alphabet) -> Regex:
    return _Parser(text, alphabet).parse()


_PREC = {Alt: 0, Cat: 1, Star: 2}


def to_text(r: Regex, alphabet: Alphabet) -> str:
    """Render in the same grammar :func:`parse` accepts (``∅`` for the empty set)."""

    def go(r, ctx):
        if isinstance(r, Empty):
            return "∅"
        if isinstance(r, Eps):
            return "_"
        if isinstance(r, Sym):
            return alphabet.symbols[r.index]
        if isinstance(r, Alt):
            s = "+".join(go(p, 0) for p in r.parts)
            prec = 0
        elif isinstance(r, Cat):
            s = "".join(go(p, 1) for p in r.parts)
            prec = 1
        else:
            inner = r.inner
            s = go(inner, 2) + "*"
            prec = 2
            if isinstance(inner, (Alt, Cat)):
                s = "(" + go(inner, 0) + ")*"
        return f"({s})" if prec < ctx else s

    return go(r, 0)


def measure(r: Regex, alphabet_size: int, memo: dict | None = None):
    """Uniform Bernoulli measure of an *unambiguous* expression.

    Returns a :class:`~fractions.Fraction` or ``math.inf``.
    """
    if memo is None:
        memo = {}
    key = id(r)
    if key in memo:
        return memo[key][1]
    if isinstance(r, Empty):
        val = Fraction(0)
    elif isinstance(r, Eps):
        val = Fraction(1)
    elif isinstance(r, Sym):
        val = Fraction(1, alphabet_size)
    elif isinstance(r, Alt):
        val = sum((measure(p, alphabet_size, memo) for p in r.parts), Fraction(0))
    elif isinstance(r, Cat):
        vals = [measure(p, alphabet_size, memo) for p in r.parts]
        if any(v == 0 for v in vals):
            val = Fraction(0)
        else:
            val = Fraction(1)
            for v in vals:
                val = val * v
    else:
        inner = measure(r.inner, alphabet_size, memo)
        val = math.inf if inner >= 1 else 1 / (1 - inner)
    # keep r alive so id() stays unique for the memo's lifetime
    memo[key] = (r, val)
    return val
