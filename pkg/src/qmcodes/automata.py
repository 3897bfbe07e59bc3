"""Finite automata over a free monoid.

:class:`Nfa` is the single working representation (an epsilon-NFA).  A
:class:`Dfa` is produced on demand by subset construction and is used for
complementation, canonical forms, and language equality.

All automata are immutable; every operation returns a new automaton.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import regex as rx
from .words import Alphabet, Word

EPS = -1

DEFAULT_STATE_CAP = 1_000_000


class ResourceError(RuntimeError):
    """A construction exceeded its configured size cap."""


@dataclass(frozen=True)
class Nfa:
    alphabet: Alphabet
    n: int
    # edges[q] is a tuple of (label, target); label EPS marks an epsilon move
    edges: tuple
    initials: frozenset
    finals: frozenset

    def __repr__(self) -> str:
        return f"Nfa(states={self.n}, initials={sorted(self.initials)}, finals={sorted(self.finals)})"

    def accepts(self, word: Sequence[int]) -> bool:
        current = eps_closure(self, self.initials)
        for c in word:
            current = step(self, current, c)
            if not current:
                return False
        return bool(current & self.finals)

    def __contains__(self, word: Sequence[int]) -> bool:
        return self.accepts(word)

    @property
    def has_epsilon(self) -> bool:
        return any(lab == EPS for out in self.edges for lab, _ in out)

    def to_json(self) -> str:
        syms = self.alphabet.symbols
        return json.dumps(
            {
                "alphabet": list(syms),
                "states": self.n,
                "transitions": [
                    [q, "_" if lab == EPS else syms[lab], r]
                    for q in range(self.n)
                    for lab, r in sorted(self.edges[q])
                ],
                "initials": sorted(self.initials),
                "finals": sorted(self.finals),
            },
            sort_keys=True,
        )


@dataclass(frozen=True)
class Dfa:
    """A complete deterministic automaton; ``table[q][a]`` is the successor."""

    alphabet: Alphabet
    table: tuple
    initial: int
    finals: frozenset

    @property
    def n(self) -> int:
        return len(self.table)

    def accepts(self, word: Sequence[int]) -> bool:
        q = self.initial
        for c in word:
            q = self.table[q][c]
        return q in self.finals

    def __contains__(self, word: Sequence[int]) -> bool:
        return self.accepts(word)

    def canonical_key(self) -> tuple:
        """Renumber states in BFS order from the initial state (symbols in order)."""
        order = {self.initial: 0}
        queue = deque([self.initial])
        rows = []
        while queue:
            q = queue.popleft()
            row = []
            for r in self.table[q]:
                if r not in order:
                    order[r] = len(order)
                    queue.append(r)
                row.append(order[r])
            rows.append(tuple(row))
        finals = tuple(sorted(order[q] for q in self.finals if q in order))
        return (tuple(rows), finals)

    def to_nfa(self) -> Nfa:
        edges = tuple(tuple((a, r) for a, r in enumerate(row)) for row in self.table)
        return Nfa(self.alphabet, len(self.table), edges, frozenset([self.initial]), frozenset(self.finals))

    def to_json(self) -> str:
        return json.dumps(
            {
                "alphabet": list(self.alphabet.symbols),
                "table": [list(row) for row in self.table],
                "initial": self.initial,
                "finals": sorted(self.finals),
            },
            sort_keys=True,
        )


class _Builder:
    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.edges: list[list[tuple[int, int]]] = []
        self.initials: set[int] = set()
        self.finals: set[int] = set()

    def state(self) -> int:
        self.edges.append([])
        return len(self.edges) - 1

    def edge(self, q: int, label: int, r: int) -> None:
        self.edges[q].append((label, r))

    def embed(self, nfa: Nfa) -> int:
        """Copy ``nfa``'s states in; return the offset of its state 0."""
        off = len(self.edges)
        for out in nfa.edges:
            self.edges.append([(lab, r + off) for lab, r in out])
        return off

    def build(self) -> Nfa:
        edges = tuple(tuple(sorted(set(out))) for out in self.edges)
        return Nfa(self.alphabet, len(edges), edges, frozenset(self.initials), frozenset(self.finals))


# -- basic constructions ------------------------------------------------------


def empty(alphabet: Alphabet) -> Nfa:
    return Nfa(alphabet, 1, ((),), frozenset([0]), frozenset())


def epsilon(alphabet: Alphabet) -> Nfa:
    return Nfa(alphabet, 1, ((),), frozenset([0]), frozenset([0]))


def universe(alphabet: Alphabet) -> Nfa:
    return Nfa(alphabet, 1, (tuple((a, 0) for a in alphabet),), frozenset([0]), frozenset([0]))


def letters_star(alphabet: Alphabet, letters: Iterable[int]) -> Nfa:
    return Nfa(alphabet, 1, (tuple((a, 0) for a in sorted(set(letters))),), frozenset([0]), frozenset([0]))


def from_word(alphabet: Alphabet, word: Word) -> Nfa:
    return from_words(alphabet, [word])


def from_words(alphabet: Alphabet, words: Iterable[Word]) -> Nfa:
    """Trie automaton for a finite set of words."""
    b = _Builder(alphabet)
    root = b.state()
    b.initials.add(root)
    children: dict[tuple[int, int], int] = {}
    for w in words:
        q = root
        for c in w:
            nxt = children.get((q, c))
            if nxt is None:
                nxt = b.state()
                children[(q, c)] = nxt
                b.edge(q, c, nxt)
            q = nxt
        b.finals.add(q)
    return b.build()


def from_regex(r: rx.Regex, alphabet: Alphabet) -> Nfa:
    """Thompson-style construction from an expression tree."""
    b = _Builder(alphabet)

    def go(r) -> tuple[int, int]:
        s, t = b.state(), b.state()
        if isinstance(r, rx.Empty):
            pass
        elif isinstance(r, rx.Eps):
            b.edge(s, EPS, t)
        elif isinstance(r, rx.Sym):
            b.edge(s, r.index, t)
        elif isinstance(r, rx.Alt):
            for p in r.parts:
                ps, pt = go(p)
                b.edge(s, EPS, ps)
                b.edge(pt, EPS, t)
        elif isinstance(r, rx.Cat):
            cur = s
            for p in r.parts:
                ps, pt = go(p)
                b.edge(cur, EPS, ps)
                cur = pt
            b.edge(cur, EPS, t)
        else:
            ps, pt = go(r.inner)
            b.edge(s, EPS, ps)
            b.edge(pt, EPS, ps)
            b.edge(pt, EPS, t)
            b.edge(s, EPS, t)
        return s, t

    s, t = go(r)
    b.initials.add(s)
    b.finals.add(t)
    return trim(remove_epsilon(b.build()))


def compile_regex(expr: str, alphabet: Alphabet) -> Nfa:
    return from_regex(rx.parse(expr, alphabet), alphabet)


# -- epsilon handling, reachability -----------------------------------------


def eps_closure(nfa: Nfa, states: Iterable[int]) -> frozenset:
    seen = set(states)
    stack = list(seen)
    edges = nfa.edges
    while stack:
        q = stack.pop()
        for lab, r in edges[q]:
            if lab == EPS and r not in seen:
                seen.add(r)
                stack.append(r)
    return frozenset(seen)


def step(nfa: Nfa, states: Iterable[int], symbol: int) -> frozenset:
    edges = nfa.edges
    out = {r for q in states for lab, r in edges[q] if lab == symbol}
    return eps_closure(nfa, out)


def remove_epsilon(nfa: Nfa) -> Nfa:
    if not nfa.has_epsilon:
        return nfa
    closures = [eps_closure(nfa, [q]) for q in range(nfa.n)]
    edges = []
    finals = set()
    for q in range(nfa.n):
        out = set()
        for p in closures[q]:
            out.update((lab, r) for lab, r in nfa.edges[p] if lab != EPS)
            if p in nfa.finals:
                finals.add(q)
        edges.append(tuple(sorted(out)))
    return Nfa(nfa.alphabet, nfa.n, tuple(edges), nfa.initials, frozenset(finals))


def _forward(nfa: Nfa, start: Iterable[int]) -> set[int]:
    seen = set(start)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for _, r in nfa.edges[q]:
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def _backward(nfa: Nfa, start: Iterable[int]) -> set[int]:
    preds: list[list[int]] = [[] for _ in range(nfa.n)]
    for q, out in enumerate(nfa.edges):
        for _, r in out:
            preds[r].append(q)
    seen = set(start)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def restrict(nfa: Nfa, keep: Iterable[int]) -> Nfa:
    keep = sorted(set(keep))
    if not keep:
        return empty(nfa.alphabet)
    if len(keep) == nfa.n:
        return nfa
    ren = {q: i for i, q in enumerate(keep)}
    edges = tuple(
        tuple((lab, ren[r]) for lab, r in nfa.edges[q] if r in ren) for q in keep
    )
    return Nfa(
        nfa.alphabet,
        len(keep),
        edges,
        frozenset(ren[q] for q in nfa.initials if q in ren),
        frozenset(ren[q] for q in nfa.finals if q in ren),
    )


def trim(nfa: Nfa) -> Nfa:
    """Keep only accessible and co-accessible states."""
    useful = _forward(nfa, nfa.initials) & _backward(nfa, nfa.finals)
    return restrict(nfa, useful)


def is_empty(nfa: Nfa) -> bool:
    return not (_forward(nfa, nfa.initials) & nfa.finals)


# -- regular and boolean operations ------------------------------------------


def _check_alphabets(*nfas: Nfa) -> Alphabet:
    alphabet = nfas[0].alphabet
    for other in nfas[1:]:
        if other.alphabet != alphabet:
            raise ValueError(f"alphabet mismatch: {alphabet!r} vs {other.alphabet!r}")
    return alphabet


def union(*nfas: Nfa) -> Nfa:
    alphabet = _check_alphabets(*nfas)
    b = _Builder(alphabet)
    for nfa in nfas:
        off = b.embed(nfa)
        b.initials.update(q + off for q in nfa.initials)
        b.finals.update(q + off for q in nfa.finals)
    return b.build()


def concat(*nfas: Nfa) -> Nfa:
    alphabet = _check_alphabets(*nfas)
    b = _Builder(alphabet)
    prev_finals = None
    for nfa in nfas:
        off = b.embed(nfa)
        inits = [q + off for q in nfa.initials]
        if prev_finals is None:
            b.initials.update(inits)
        else:
            for f in prev_finals:
                for i in inits:
                    b.edge(f, EPS, i)
        prev_finals = [q + off for q in nfa.finals]
    b.finals.update(prev_finals)
    return b.build()


def star(nfa: Nfa) -> Nfa:
    b = _Builder(nfa.alphabet)
    hub = b.state()
    off = b.embed(nfa)
    for q in nfa.initials:
        b.edge(hub, EPS, q + off)
    for q in nfa.finals:
        b.edge(q + off, EPS, hub)
    b.initials.add(hub)
    b.finals.add(hub)
    return b.build()


def plus(nfa: Nfa) -> Nfa:
    return concat(nfa, star(nfa))


def reverse(nfa: Nfa) -> Nfa:
    edges: list[list[tuple[int, int]]] = [[] for _ in range(nfa.n)]
    for q, out in enumerate(nfa.edges):
        for lab, r in out:
            edges[r].append((lab, q))
    return Nfa(
        nfa.alphabet,
        nfa.n,
        tuple(tuple(sorted(out)) for out in edges),
        nfa.finals,
        nfa.initials,
    )


def map_letters(nfa: Nfa, perm: Sequence[int]) -> Nfa:
    """Image of the language under the letter-to-letter map ``a -> perm[a]``."""
    edges = tuple(
        tuple(sorted((lab if lab == EPS else perm[lab], r) for lab, r in out)) for out in nfa.edges
    )
    return Nfa(nfa.alphabet, nfa.n, edges, nfa.initials, nfa.finals)


def _product(a: Nfa, b: Nfa, final_rule) -> Nfa:
    a = remove_epsilon(a)
    b = remove_epsilon(b)
    index: dict[tuple[int, int], int] = {}
    edges: list[list[tuple[int, int]]] = []
    queue = deque()

    def get(pair):
        i = index.get(pair)
        if i is None:
            i = index[pair] = len(edges)
            edges.append([])
            queue.append(pair)
        return i

    inits = [get((p, q)) for p in sorted(a.initials) for q in sorted(b.initials)]
    b_by_label = [dict() for _ in range(b.n)]
    for q, out in enumerate(b.edges):
        for lab, r in out:
            b_by_label[q].setdefault(lab, []).append(r)
    while queue:
        p, q = pair = queue.popleft()
        i = index[pair]
        bq = b_by_label[q]
        for lab, p2 in a.edges[p]:
            for q2 in bq.get(lab, ()):
                edges[i].append((lab, get((p2, q2))))
    finals = frozenset(i for (p, q), i in index.items() if final_rule(p in a.finals, q in b.finals))
    nfa = Nfa(a.alphabet, len(edges), tuple(tuple(out) for out in edges), frozenset(inits), finals)
    return nfa


def intersection(a: Nfa, b: Nfa) -> Nfa:
    _check_alphabets(a, b)
    return _product(a, b, lambda x, y: x and y)


def intersects(a: Nfa, b: Nfa) -> bool:
    return not is_empty(intersection(a, b))


def complement(nfa: Nfa, cap: int = DEFAULT_STATE_CAP) -> Nfa:
    d = determinize(nfa, cap)
    return Dfa(d.alphabet, d.table, d.initial, frozenset(range(d.n)) - d.finals).to_nfa()


def difference(a: Nfa, b: Nfa, cap: int = DEFAULT_STATE_CAP) -> Nfa:
    _check_alphabets(a, b)
    return intersection(a, complement(b, cap))


def is_subset(a: Nfa, b: Nfa, cap: int = DEFAULT_STATE_CAP) -> bool:
    return is_empty(difference(a, b, cap))


def left_quotient(l1: Nfa, l2: Nfa) -> Nfa:
    """``{z : yz in l1 for some y in l2}``."""
    _check_alphabets(l1, l2)
    a = remove_epsilon(l1)
    b = remove_epsilon(l2)
    # walk l2 and l1 in lockstep; wherever l2 accepts, the l1 state starts a suffix
    a_by_label = [dict() for _ in range(a.n)]
    for q, out in enumerate(a.edges):
        for lab, r in out:
            a_by_label[q].setdefault(lab, []).append(r)
    stack = [(p, q) for p in b.initials for q in a.initials]
    seen = set(stack)
    starts = set()
    while stack:
        p, q = stack.pop()
        if p in b.finals:
            starts.add(q)
        for lab, p2 in b.edges[p]:
            for q2 in a_by_label[q].get(lab, ()):
                if (p2, q2) not in seen:
                    seen.add((p2, q2))
                    stack.append((p2, q2))
    return trim(Nfa(a.alphabet, a.n, a.edges, frozenset(starts), a.finals))


def right_quotient(l1: Nfa, l2: Nfa) -> Nfa:
    """``{z : zy in l1 for some y in l2}``."""
    _check_alphabets(l1, l2)
    return reverse(left_quotient(reverse(l1), reverse(l2)))


def quotient(l1: Nfa, l2: Nfa, side: str = "left") -> Nfa:
    if side == "left":
        return left_quotient(l1, l2)
    if side == "right":
        return right_quotient(l1, l2)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def left_quotient_word(nfa: Nfa, word: Word) -> Nfa:
    """``word^-1 L`` by running ``word`` from the initial states."""
    current = eps_closure(nfa, nfa.initials)
    for c in word:
        current = step(nfa, current, c)
    return Nfa(nfa.alphabet, nfa.n, nfa.edges, current, nfa.finals)


def right_quotient_word(nfa: Nfa, word: Word) -> Nfa:
    """``L word^-1``."""
    return reverse(left_quotient_word(reverse(nfa), word[::-1]))


def factor_closure(nfa: Nfa) -> Nfa:
    t = trim(nfa)
    if not t.finals:
        return empty(nfa.alphabet)
    everything = frozenset(range(t.n))
    return Nfa(t.alphabet, t.n, t.edges, everything, everything)


def prefix_closure(nfa: Nfa) -> Nfa:
    t = trim(nfa)
    if not t.finals:
        return empty(nfa.alphabet)
    return Nfa(t.alphabet, t.n, t.edges, t.initials, frozenset(range(t.n)))


def contains_factor(alphabet: Alphabet, word: Word) -> Nfa:
    """``A* word A*``."""
    u = universe(alphabet)
    return concat(u, from_word(alphabet, word), u)


# -- determinization, minimization, equality ---------------------------------


def determinize(nfa: Nfa, cap: int = DEFAULT_STATE_CAP) -> Dfa:
    """Subset construction; the empty subset becomes the sink, so the result is complete."""
    nfa = remove_epsilon(nfa)
    sigma = len(nfa.alphabet)
    by_label = [[[] for _ in range(sigma)] for _ in range(nfa.n)]
    for q, out in enumerate(nfa.edges):
        for lab, r in out:
            by_label[q][lab].append(r)
    start = frozenset(nfa.initials)
    index = {start: 0}
    order = [start]
    table = []
    i = 0
    while i < len(order):
        s = order[i]
        row = []
        for a in range(sigma):
            t = frozenset(r for q in s for r in by_label[q][a])
            j = index.get(t)
            if j is None:
                if len(order) >= cap:
                    raise ResourceError(f"subset construction exceeded {cap} states")
                j = index[t] = len(order)
                order.append(t)
            row.append(j)
        table.append(tuple(row))
        i += 1
    finals = frozenset(j for j, s in enumerate(order) if s & nfa.finals)
    return Dfa(nfa.alphabet, tuple(table), 0, finals)


def minimize(dfa: Dfa) -> Dfa:
    """Moore partition refinement on the accessible part."""
    reach = {dfa.initial}
    stack = [dfa.initial]
    while stack:
        q = stack.pop()
        for r in dfa.table[q]:
            if r not in reach:
                reach.add(r)
                stack.append(r)
    states = sorted(reach)
    block = {q: (1 if q in dfa.finals else 0) for q in states}
    nblocks = len(set(block.values()))
    while True:
        sigs: dict[tuple, int] = {}
        new = {}
        for q in states:
            sig = (block[q],) + tuple(block[r] for r in dfa.table[q])
            new[q] = sigs.setdefault(sig, len(sigs))
        block = new
        if len(sigs) == nblocks:
            break
        nblocks = len(sigs)
    table = [None] * nblocks
    for q in states:
        b = block[q]
        if table[b] is None:
            table[b] = tuple(block[r] for r in dfa.table[q])
    finals = frozenset(block[q] for q in states if q in dfa.finals)
    m = Dfa(dfa.alphabet, tuple(table), block[dfa.initial], finals)
    return _renumber(m)


def _renumber(dfa: Dfa) -> Dfa:
    rows, finals = dfa.canonical_key()
    return Dfa(dfa.alphabet, rows, 0, frozenset(finals))


def determinize_minimize(nfa: Nfa, cap: int = DEFAULT_STATE_CAP) -> Dfa:
    return minimize(determinize(nfa, cap))


def canonical(nfa: Nfa, cap: int = DEFAULT_STATE_CAP) -> tuple:
    return determinize_minimize(nfa, cap).canonical_key()


def dfa_equal(d1: Dfa, d2: Dfa) -> bool:
    if d1.alphabet != d2.alphabet:
        return False
    return minimize(d1).canonical_key() == minimize(d2).canonical_key()


def equivalent(a: Nfa, b: Nfa, cap: int = DEFAULT_STATE_CAP) -> bool:
    return dfa_equal(determinize(a, cap), determinize(b, cap))


def minimal_nfa(nfa: Nfa, cap: int = DEFAULT_STATE_CAP) -> Nfa:
    """Trimmed minimal DFA viewed as an NFA (keeps intermediate sizes small)."""
    return trim(determinize_minimize(nfa, cap).to_nfa())


# -- words ------------------------------------------------------------------


def shortest_word(nfa: Nfa) -> Word | None:
    """Length-lex least accepted word, or ``None`` for the empty language."""
    nfa = remove_epsilon(nfa)
    sigma = len(nfa.alphabet)
    start = frozenset(nfa.initials)
    parent: dict[frozenset, tuple] = {start: None}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if s & nfa.finals:
            word = []
            while parent[s] is not None:
                s, a = parent[s]
                word.append(a)
            return tuple(reversed(word))
        for a in range(sigma):
            t = frozenset(r for q in s for lab, r in nfa.edges[q] if lab == a)
            if t and t not in parent:
                parent[t] = (s, a)
                queue.append(t)
    return None


def words(nfa: Nfa, max_len: int) -> Iterator[Word]:
    """Accepted words of length ``<= max_len`` in length-lex order."""
    nfa = remove_epsilon(nfa)
    layer = {(): frozenset(nfa.initials)}
    for n in range(max_len + 1):
        for w in sorted(layer):
            if layer[w] & nfa.finals:
                yield w
        if n == max_len:
            break
        nxt = {}
        for w, s in layer.items():
            for a in nfa.alphabet:
                t = frozenset(r for q in s for lab, r in nfa.edges[q] if lab == a)
                if t:
                    nxt[w + (a,)] = t
        layer = nxt


def word_set(nfa: Nfa, max_len: int) -> set[Word]:
    return set(words(nfa, max_len))


# -- state elimination -------------------------------------------------------


def to_regex(nfa: Nfa, cap: int = DEFAULT_STATE_CAP) -> rx.Regex:
    """Expression for the language by state elimination on the trimmed minimal DFA.

    States are eliminated highest index first.  Since the automaton is
    deterministic the resulting expression is unambiguous.
    """
    d = determinize_minimize(nfa, cap)
    t = trim(d.to_nfa())
    if not t.finals:
        return rx.EMPTY
    n = t.n
    start, end = n, n + 1
    label: dict[tuple[int, int], rx.Regex] = {}

    def add(p, q, r):
        label[(p, q)] = rx.alt(label[(p, q)], r) if (p, q) in label else r

    for q, out in enumerate(t.edges):
        for a, r in out:
            add(q, r, rx.Sym(a))
    for q in t.initials:
        add(start, q, rx.EPS)
    for q in t.finals:
        add(q, end, rx.EPS)
    for q in range(n - 1, -1, -1):
        loop = label.pop((q, q), None)
        ins = [(p, r) for (p, s), r in label.items() if s == q]
        outs = [(s, r) for (p, s), r in label.items() if p == q]
        for p, _ in ins:
            del label[(p, q)]
        for s, _ in outs:
            del label[(q, s)]
        mid = rx.star(loop) if loop is not None else rx.EPS
        for p, r_in in ins:
            for s, r_out in outs:
                add(p, s, rx.cat(r_in, mid, r_out))
    return label.get((start, end), rx.EMPTY)
