"""Letter-level finite transducers (automata over pairs of tapes).

Each edge carries an input label and an output label; either may be
``EPS``.  :func:`from_word_pairs` accepts edges labelled by arbitrary word
pairs and splits them into letter-level chains.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterable, Sequence

from . import automata as fa
from .automata import EPS, Nfa
from .words import Alphabet, Word


@dataclass(frozen=True)
class Transducer:
    alphabet: Alphabet
    n: int
    # edges[q] is a tuple of (input, output, target)
    edges: tuple
    initials: frozenset
    finals: frozenset

    def __repr__(self) -> str:
        count = sum(len(out) for out in self.edges)
        return f"Transducer(states={self.n}, edges={count})"

    def to_json(self) -> str:
        syms = self.alphabet.symbols

        def show(lab):
            return "_" if lab == EPS else syms[lab]

        return json.dumps(
            {
                "alphabet": list(syms),
                "states": self.n,
                "transitions": [
                    [q, show(a), show(b), r] for q in range(self.n) for a, b, r in sorted(self.edges[q])
                ],
                "initials": sorted(self.initials),
                "finals": sorted(self.finals),
            },
            sort_keys=True,
        )


def from_word_pairs(
    alphabet: Alphabet,
    n: int,
    edges: Iterable[tuple[int, Word, Word, int]],
    initials: Iterable[int],
    finals: Iterable[int],
) -> Transducer:
    """Build from ``(source, input_word, output_word, target)`` edges.

    A pair ``(u, u')`` becomes a chain of ``max(|u|, |u'|)`` letter-level
    edges, the shorter side padded with empty moves.  Empty-pair edges are
    then eliminated.
    """
    out: list[set] = [set() for _ in range(n)]
    for src, u, u2, dst in edges:
        steps = list(zip_longest(u, u2, fillvalue=EPS))
        if not steps:
            if src != dst:
                out[src].add((EPS, EPS, dst))
            continue
        cur = src
        for i, (a, b) in enumerate(steps):
            if i == len(steps) - 1:
                nxt = dst
            else:
                nxt = len(out)
                out.append(set())
            out[cur].add((a, b, nxt))
            cur = nxt
    t = Transducer(
        alphabet,
        len(out),
        tuple(tuple(sorted(s)) for s in out),
        frozenset(initials),
        frozenset(finals),
    )
    return remove_empty_moves(t)


def normalize(t: Transducer) -> Transducer:
    return remove_empty_moves(t)


def _empty_closure(t: Transducer, q: int) -> set[int]:
    seen = {q}
    stack = [q]
    while stack:
        p = stack.pop()
        for a, b, r in t.edges[p]:
            if a == EPS and b == EPS and r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def remove_empty_moves(t: Transducer) -> Transducer:
    """Eliminate ``(EPS, EPS)`` edges without changing the relation."""
    if not any(a == EPS and b == EPS for out in t.edges for a, b, _ in out):
        return t
    edges = []
    finals = set()
    for q in range(t.n):
        out = set()
        for p in _empty_closure(t, q):
            out.update(e for e in t.edges[p] if not (e[0] == EPS and e[1] == EPS))
            if p in t.finals:
                finals.add(q)
        edges.append(tuple(sorted(out)))
    return Transducer(t.alphabet, t.n, tuple(edges), t.initials, frozenset(finals))


def empty_relation(alphabet: Alphabet) -> Transducer:
    return Transducer(alphabet, 1, ((),), frozenset([0]), frozenset())


def identity(alphabet: Alphabet) -> Transducer:
    return Transducer(alphabet, 1, (tuple((a, a, 0) for a in alphabet),), frozenset([0]), frozenset([0]))


def union(*ts: Transducer) -> Transducer:
    alphabet = ts[0].alphabet
    edges = []
    initials, finals = set(), set()
    for t in ts:
        if t.alphabet != alphabet:
            raise ValueError("alphabet mismatch")
        off = len(edges)
        edges.extend(tuple((a, b, r + off) for a, b, r in out) for out in t.edges)
        initials.update(q + off for q in t.initials)
        finals.update(q + off for q in t.finals)
    return Transducer(alphabet, len(edges), tuple(edges), frozenset(initials), frozenset(finals))


def inverse(t: Transducer) -> Transducer:
    edges = tuple(tuple(sorted((b, a, r) for a, b, r in out)) for out in t.edges)
    return Transducer(t.alphabet, t.n, edges, t.initials, t.finals)


def reverse(t: Transducer) -> Transducer:
    """Reverse both tapes: ``(w, w')`` becomes ``(w^R, w'^R)``."""
    edges: list[list] = [[] for _ in range(t.n)]
    for q, out in enumerate(t.edges):
        for a, b, r in out:
            edges[r].append((a, b, q))
    return Transducer(t.alphabet, t.n, tuple(tuple(sorted(e)) for e in edges), t.finals, t.initials)


def trim(t: Transducer) -> Transducer:
    shadow = Nfa(t.alphabet, t.n, tuple(tuple((0, r) for _, _, r in out) for out in t.edges), t.initials, t.finals)
    fwd = fa._forward(shadow, t.initials)
    bwd = fa._backward(shadow, t.finals)
    keep = sorted(fwd & bwd)
    if not keep:
        return empty_relation(t.alphabet)
    ren = {q: i for i, q in enumerate(keep)}
    edges = tuple(tuple((a, b, ren[r]) for a, b, r in t.edges[q] if r in ren) for q in keep)
    return Transducer(
        t.alphabet,
        len(keep),
        edges,
        frozenset(ren[q] for q in t.initials if q in ren),
        frozenset(ren[q] for q in t.finals if q in ren),
    )


def compose(t1: Transducer, t2: Transducer) -> Transducer:
    """``{(x, z) : (x, y) in t1 and (y, z) in t2 for some y}``.

    Synchronised product on the middle tape.  An edge of ``t1`` writing
    nothing, or an edge of ``t2`` reading nothing, moves alone while the other
    side stays put.
    """
    if t1.alphabet != t2.alphabet:
        raise ValueError("alphabet mismatch")
    index: dict[tuple[int, int], int] = {}
    edges: list[set] = []
    queue = deque()

    def get(pair):
        i = index.get(pair)
        if i is None:
            i = index[pair] = len(edges)
            edges.append(set())
            queue.append(pair)
        return i

    inits = [get((p, q)) for p in sorted(t1.initials) for q in sorted(t2.initials)]
    while queue:
        p, q = pair = queue.popleft()
        i = index[pair]
        for a, b, p2 in t1.edges[p]:
            if b == EPS:
                edges[i].add((a, EPS, get((p2, q))))
                continue
            for c, d, q2 in t2.edges[q]:
                if c == b:
                    edges[i].add((a, d, get((p2, q2))))
        for c, d, q2 in t2.edges[q]:
            if c == EPS:
                edges[i].add((EPS, d, get((p, q2))))
    finals = frozenset(i for (p, q), i in index.items() if p in t1.finals and q in t2.finals)
    t = Transducer(t1.alphabet, len(edges), tuple(tuple(sorted(e)) for e in edges), frozenset(inits), finals)
    return trim(remove_empty_moves(t))


def image(t: Transducer, x: Nfa) -> Nfa:
    """``{w' : (w, w') in t for some w in x}``, as an epsilon-NFA then cleaned."""
    if t.alphabet != x.alphabet:
        raise ValueError("alphabet mismatch")
    x = fa.remove_epsilon(x)
    by_label = [dict() for _ in range(x.n)]
    for q, out in enumerate(x.edges):
        for lab, r in out:
            by_label[q].setdefault(lab, []).append(r)
    index: dict[tuple[int, int], int] = {}
    edges: list[set] = []
    queue = deque()

    def get(pair):
        i = index.get(pair)
        if i is None:
            i = index[pair] = len(edges)
            edges.append(set())
            queue.append(pair)
        return i

    inits = [get((p, q)) for p in sorted(t.initials) for q in sorted(x.initials)]
    while queue:
        p, q = pair = queue.popleft()
        i = index[pair]
        for a, b, p2 in t.edges[p]:
            if a == EPS:
                edges[i].add((b, get((p2, q))))
            else:
                for q2 in by_label[q].get(a, ()):
                    edges[i].add((b, get((p2, q2))))
    finals = frozenset(i for (p, q), i in index.items() if p in t.finals and q in x.finals)
    nfa = Nfa(x.alphabet, len(edges), tuple(tuple(sorted(e)) for e in edges), frozenset(inits), finals)
    return fa.trim(fa.remove_epsilon(nfa))


def preimage(t: Transducer, y: Nfa) -> Nfa:
    return image(inverse(t), y)


def relation_contains(t: Transducer, w: Sequence[int], w2: Sequence[int]) -> bool:
    """Membership of ``(w, w2)`` by search over ``(state, i, j)`` triples."""
    start = [(q, 0, 0) for q in t.initials]
    seen = set(start)
    stack = list(start)
    n, m = len(w), len(w2)
    while stack:
        q, i, j = stack.pop()
        if i == n and j == m and q in t.finals:
            return True
        for a, b, r in t.edges[q]:
            i2, j2 = i, j
            if a != EPS:
                if i == n or w[i] != a:
                    continue
                i2 += 1
            if b != EPS:
                if j == m or w2[j] != b:
                    continue
                j2 += 1
            nxt = (r, i2, j2)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def pairs(t: Transducer, max_len: int) -> set[tuple[Word, Word]]:
    """All pairs in the relation with both sides of length ``<= max_len`` (test helper)."""
    out = set()
    for w in t.alphabet.words(max_len):
        img = fa.determinize(image(t, fa.from_word(t.alphabet, w)))
        for w2 in fa.words(img.to_nfa(), max_len):
            out.add((w, w2))
    return out
