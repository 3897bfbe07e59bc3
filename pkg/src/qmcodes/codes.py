"""Decision procedures for regular codes: unique decipherability, measure,
completeness, and non-factor search."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import automata as fa
from . import regex as rx
from .automata import DEFAULT_STATE_CAP, Dfa, Nfa
from .words import Word, WordError


@dataclass
class SpChain:
    """Quotient sets computed by the unique-decipherability test.

    ``sets[n]`` is the minimal DFA of the ``n``-th set.  ``repeat_of`` is the
    index of the earlier set equal to the last one when the loop closed.
    """

    sets: list[Dfa] = field(default_factory=list)
    is_code: bool = True
    stop_index: int = 0
    repeat_of: int | None = None
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "code" if self.is_code else "not-code"

    def describe(self, max_len: int = 6) -> list[list[str]]:
        """Words of each set up to ``max_len`` (for traces and reports)."""
        out = []
        for d in self.sets:
            al = d.alphabet
            out.append([al.format(w) for w in fa.words(d.to_nfa(), max_len)])
        return out


def sardinas_patterson(x: Nfa, cap: int = DEFAULT_STATE_CAP) -> SpChain:
    alphabet = x.alphabet
    x = fa.minimal_nfa(x, cap)
    chain = SpChain()
    if x.accepts(()):
        if fa.equivalent(x, fa.epsilon(alphabet), cap):
            raise WordError("the set {empty word} is not a valid code input")
        chain.is_code = False
        chain.reason = "contains the empty word"
        return chain
    eps = fa.epsilon(alphabet)
    current = fa.minimal_nfa(fa.difference(fa.left_quotient(x, x), eps, cap), cap)
    seen: dict[tuple, int] = {}
    n = 0
    while True:
        d = fa.determinize_minimize(current, cap)
        chain.sets.append(d)
        chain.stop_index = n
        if d.accepts(()):
            chain.is_code = False
            chain.reason = f"set {n} contains the empty word"
            return chain
        key = d.canonical_key()
        if key in seen:
            chain.repeat_of = seen[key]
            chain.reason = f"set {n} repeats set {seen[key]}"
            return chain
        seen[key] = n
        current = fa.minimal_nfa(fa.union(fa.left_quotient(x, current), fa.left_quotient(current, x)), cap)
        n += 1


def is_code(x: Nfa, cap: int = DEFAULT_STATE_CAP) -> bool:
    return sardinas_patterson(x, cap).is_code


def measure(x: Nfa, cap: int = DEFAULT_STATE_CAP):
    """Uniform Bernoulli measure as a ``Fraction``, or ``math.inf``."""
    expr = fa.to_regex(x, cap)
    return rx.measure(expr, len(x.alphabet))


def length_counts(x: Nfa, max_len: int, cap: int = DEFAULT_STATE_CAP) -> list[int]:
    """``counts[n]`` is the number of words of length ``n`` in ``x``."""
    d = fa.determinize_minimize(x, cap)
    vec = [0] * d.n
    vec[d.initial] = 1
    counts = []
    for _ in range(max_len + 1):
        counts.append(sum(vec[q] for q in d.finals))
        nxt = [0] * d.n
        for q, c in enumerate(vec):
            if c:
                for r in d.table[q]:
                    nxt[r] += c
        vec = nxt
    return counts


def partial_measure(x: Nfa, max_len: int = 32, cap: int = DEFAULT_STATE_CAP) -> Fraction:
    """Exact sum of ``|x ∩ A^n| / |A|^n`` for ``n <= max_len`` (a lower bound on the measure)."""
    sigma = len(x.alphabet)
    return sum(
        (Fraction(c, sigma**n) for n, c in enumerate(length_counts(x, max_len, cap))),
        Fraction(0),
    )


def format_measure(value) -> str:
    if value == math.inf:
        return "inf"
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def factors_of_star(x: Nfa) -> Nfa:
    return fa.factor_closure(fa.star(x))


def is_complete(x: Nfa, cap: int = DEFAULT_STATE_CAP) -> bool:
    """Every word is a factor of some word of ``x*``."""
    return fa.is_empty(fa.complement(factors_of_star(x), cap))


def find_non_factor(x: Nfa, min_len: int = 1, cap: int = DEFAULT_STATE_CAP) -> Word:
    """Length-lex least word outside the factors of ``x*``, padded with the
    least letter up to ``min_len``.  Padding keeps it a non-factor."""
    z0 = fa.shortest_word(fa.complement(factors_of_star(x), cap))
    if z0 is None:
        raise ValueError("the set is complete: every word is a factor of its star")
    if len(z0) < min_len:
        z0 = z0 + (0,) * (min_len - len(z0))
    return z0
