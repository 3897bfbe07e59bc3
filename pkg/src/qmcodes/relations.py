"""Relations of bounded prefix, suffix and factor distance, and of a letter
(anti-)automorphism, together with their images on regular languages.

Three distances are covered, each restricted to pairs at distance ``1..k``:

* prefix: a transducer that copies a common prefix and then rewrites a
  short tail;
* suffix: the prefix transducer with both tapes reversed;
* factor: a finite union of context rewrites ``u g v -> u' g v'`` (one per
  context tuple), each restricted away from the words it maps to themselves.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from . import automata as fa
from . import transducers as td
from .automata import Nfa, ResourceError
from .transducers import Transducer
from .words import (
    Alphabet,
    ThetaSpec,
    Word,
    conjugacy_splits,
    factor_distance,
    is_prefix,
    is_suffix,
    prefix_distance,
    suffix_distance,
    theta_distance,
)

FAMILIES = ("prefix", "suffix", "factor", "theta")
FACTOR_K_CAP = 4


@dataclass(frozen=True)
class RelationSpec:
    family: str
    k: int = 1
    theta: ThetaSpec | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown relation family {self.family!r}")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if (self.theta is not None) != (self.family == "theta"):
            raise ValueError("a theta map is required for, and only for, the theta family")
        if self.family == "theta" and self.k != 1:
            raise ValueError("the theta family has fixed tolerance k=1")

    def with_k(self, k: int) -> "RelationSpec":
        if self.family == "theta":
            return self
        return RelationSpec(self.family, k)

    def distance(self, w: Word, w2: Word) -> int:
        if self.family == "prefix":
            return prefix_distance(w, w2)
        if self.family == "suffix":
            return suffix_distance(w, w2)
        if self.family == "factor":
            return factor_distance(w, w2)
        return theta_distance(self.theta, w, w2)

    def to_dict(self) -> dict:
        out = {"family": self.family, "k": self.k}
        if self.theta is not None:
            out["theta"] = {"perm": self.theta.to_text(), "kind": self.theta.kind}
        return out


# -- prefix and suffix ------------------------------------------------------


def _nonempty_words(alphabet: Alphabet, max_len: int) -> Iterator[Word]:
    return alphabet.words(max_len, min_len=1)


@lru_cache(maxsize=None)
def build_underline_prefix(k: int, alphabet: Alphabet) -> Transducer:
    """Pairs ``(p u, p u')`` where ``u, u'`` start differently and ``1 <= |u|+|u'| <= k``.

    State 0 copies the common prefix.  States 1, 2 and 3 are final sinks
    reached by rewriting the tails: both non-empty, output tail empty, or
    input tail empty.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    edges: list[tuple[int, Word, Word, int]] = [(0, (a,), (a,), 0) for a in alphabet]
    for u in _nonempty_words(alphabet, k - 1):
        for u2 in _nonempty_words(alphabet, k - len(u)):
            if u[0] != u2[0]:
                edges.append((0, u, u2, 1))
    for u in _nonempty_words(alphabet, k):
        edges.append((0, u, (), 2))
        edges.append((0, (), u, 3))
    return td.from_word_pairs(alphabet, 4, edges, [0], [1, 2, 3])


@lru_cache(maxsize=None)
def build_underline_suffix(k: int, alphabet: Alphabet) -> Transducer:
    return td.reverse(build_underline_prefix(k, alphabet))


def underline_prefix_image(x: Nfa, k: int) -> Nfa:
    return td.image(build_underline_prefix(k, x.alphabet), x)


def underline_suffix_image(x: Nfa, k: int) -> Nfa:
    # suffix distance is prefix distance on reversed words
    return fa.reverse(underline_prefix_image(fa.reverse(x), k))


def f1_image(x: Nfa) -> Nfa:
    """Ball of factor radius 1 around ``x`` (``x`` included)."""
    return fa.minimal_nfa(fa.union(x, underline_prefix_image(x, 1), underline_suffix_image(x, 1)))


def fk_image(x: Nfa, k: int) -> Nfa:
    """Ball of factor radius ``k``, built as ``k`` radius-1 steps."""
    if k < 1:
        raise ValueError("k must be at least 1")
    out = x
    for _ in range(k):
        out = f1_image(out)
    return out


# -- factor covering ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class OmegaTuple:
    """Context rewrite ``u g v -> u2 g v2``."""

    u: Word
    u2: Word
    v: Word
    v2: Word

    @property
    def size(self) -> int:
        return len(self.u) + len(self.u2) + len(self.v) + len(self.v2)

    @property
    def is_proper(self) -> bool:
        return self.u != self.u2 or self.v != self.v2

    def partner(self, w: Word) -> Word | None:
        """``u2 g v2`` if ``w = u g v``, else ``None``."""
        if len(w) < len(self.u) + len(self.v) or not is_prefix(self.u, w) or not is_suffix(self.v, w):
            return None
        g = w[len(self.u): len(w) - len(self.v)]
        return self.u2 + g + self.v2

    def format(self, alphabet: Alphabet) -> str:
        return "(" + ",".join(alphabet.format(p) for p in (self.u, self.u2, self.v, self.v2)) + ")"


def enumerate_omega_prime(k: int, alphabet: Alphabet, max_k: int = FACTOR_K_CAP) -> list[OmegaTuple]:
    """All proper context tuples of total length ``<= k``, ordered by size then lexicographically."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > max_k:
        raise ResourceError(f"factor tolerance k={k} exceeds the cap {max_k}")
    return list(_omega_prime(k, alphabet))


@lru_cache(maxsize=None)
def _omega_prime(k: int, alphabet: Alphabet) -> tuple[OmegaTuple, ...]:
    out = []
    sigma = range(len(alphabet))
    for total in range(k + 1):
        batch = []
        for lens in itertools.product(range(total + 1), repeat=4):
            if sum(lens) != total:
                continue
            parts = [list(itertools.product(sigma, repeat=n)) for n in lens]
            for u, u2, v, v2 in itertools.product(*parts):
                om = OmegaTuple(u, u2, v, v2)
                if om.is_proper:
                    batch.append(om)
        out.extend(sorted(batch))
    return tuple(out)


def build_omega_transducer(om: OmegaTuple, alphabet: Alphabet) -> Transducer:
    """Three states: rewrite ``u`` to ``u2``, copy, rewrite ``v`` to ``v2``."""
    edges = [(0, om.u, om.u2, 1), (1, om.v, om.v2, 2)]
    edges += [(1, (a,), (a,), 1) for a in alphabet]
    return td.from_word_pairs(alphabet, 3, edges, [0], [2])


def s_omega_image(om: OmegaTuple, x: Nfa) -> Nfa:
    """``u2 . (u^-1 x v^-1) . v2``."""
    alphabet = x.alphabet
    middle = fa.right_quotient_word(fa.left_quotient_word(x, om.u), om.v)
    middle = fa.trim(middle)
    if not middle.finals:
        return fa.empty(alphabet)
    return fa.concat(fa.from_word(alphabet, om.u2), middle, fa.from_word(alphabet, om.v2))


def omega_fixed_parts(om: OmegaTuple) -> list[tuple[Word, Word, Word]]:
    """``(prefix, period, suffix)`` triples; the words a rewrite maps to themselves
    are exactly ``prefix period^n suffix`` for ``n >= 0``."""
    u, u2, v, v2 = om.u, om.u2, om.v, om.v2
    out = []
    if len(u) > len(u2) and is_prefix(u2, u):
        t = u[len(u2):]
        for alpha, beta in conjugacy_splits(t, v, v2):
            out.append((u, alpha + beta, alpha + v))
    elif len(u2) > len(u) and is_prefix(u, u2):
        t = u2[len(u):]
        for alpha, beta in conjugacy_splits(t, v2, v):
            out.append((u2, alpha + beta, alpha + v2))
    return out


def r_omega(om: OmegaTuple, alphabet: Alphabet) -> Nfa:
    """Words that the rewrite ``om`` maps to themselves."""
    parts = [
        fa.concat(fa.from_word(alphabet, p), fa.star(fa.from_word(alphabet, per)), fa.from_word(alphabet, s))
        for p, per, s in omega_fixed_parts(om)
    ]
    if not parts:
        return fa.empty(alphabet)
    return fa.trim(fa.remove_epsilon(fa.union(*parts)))


@lru_cache(maxsize=None)
def _r_omega_complement(om: OmegaTuple, alphabet: Alphabet) -> Nfa | None:
    if not omega_fixed_parts(om):
        return None
    return fa.complement(r_omega(om, alphabet))


def underline_factor_image(x: Nfa, k: int, max_k: int = FACTOR_K_CAP) -> Nfa:
    """``{w' : 1 <= d(w, w') <= k for some w in x}`` under factor distance."""
    alphabet = x.alphabet
    x = fa.trim(fa.remove_epsilon(x))
    if not x.finals:
        return fa.empty(alphabet)
    pieces = []
    for om in enumerate_omega_prime(k, alphabet, max_k):
        # the rewrite only applies to words with the right ends
        if fa.is_empty(fa.right_quotient_word(fa.left_quotient_word(x, om.u), om.v)):
            continue
        co = _r_omega_complement(om, alphabet)
        src = x if co is None else fa.trim(fa.intersection(x, co))
        img = s_omega_image(om, src)
        if img.finals:
            pieces.append(img)
    if not pieces:
        return fa.empty(alphabet)
    return fa.minimal_nfa(fa.union(*pieces))


def factor_pair_related(w: Word, w2: Word, k: int, alphabet: Alphabet) -> bool:
    """Membership of ``(w, w2)`` in the bounded factor relation via the covering."""
    for om in _omega_prime(k, alphabet):
        if om.partner(w) == w2 and w2 != w:
            return True
    return False


# -- letter (anti-)automorphisms ---------------------------------------------


def theta_image(theta: ThetaSpec, x: Nfa, direction: str = "forward") -> Nfa:
    if direction == "forward":
        perm = theta.perm
    elif direction == "inverse":
        perm = theta.inverse_perm
    else:
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    src = fa.reverse(x) if theta.is_anti else x
    return fa.map_letters(src, perm)


def build_underline_theta(theta: ThetaSpec) -> Transducer:
    """``{(w, theta(w)) : theta(w) != w}`` for an automorphism."""
    if theta.is_anti:
        raise ValueError("the strict relation of an anti-automorphism is not regular")
    alphabet = theta.alphabet
    fixed = set(theta.fixed_letters)
    loop0 = tuple((a, a, 0) for a in sorted(fixed))
    jump = tuple((a, theta.perm[a], 1) for a in alphabet if a not in fixed)
    loop1 = tuple((a, theta.perm[a], 1) for a in alphabet)
    return Transducer(alphabet, 2, (loop0 + jump, loop1), frozenset([0]), frozenset([1]))


def _auto_fixed_witness(z: Nfa, theta: ThetaSpec) -> Word | None:
    fixed = fa.letters_star(z.alphabet, theta.fixed_letters)
    return fa.shortest_word(fa.difference(z, fixed))


def _shortest_between(nfa: Nfa, src: int, dst: int) -> Word | None:
    parent: dict[int, tuple] = {src: None}
    queue = deque([src])
    while queue:
        q = queue.popleft()
        if q == dst:
            out = []
            while parent[q] is not None:
                q, a = parent[q]
                out.append(a)
            return tuple(reversed(out))
        for a, r in sorted(nfa.edges[q], key=lambda e: e[0]):
            if r not in parent:
                parent[r] = (q, a)
                queue.append(r)
    return None


def _anti_fixed_witness(z: Nfa, theta: ThetaSpec) -> Word | None:
    h = theta.perm
    nfa = fa.trim(fa.remove_epsilon(z))
    if not nfa.finals:
        return None
    preds: list[list[tuple[int, int]]] = [[] for _ in range(nfa.n)]
    for q, out in enumerate(nfa.edges):
        for a, r in out:
            preds[r].append((a, q))
    reach = [set(fa._forward(nfa, [q])) for q in range(nfa.n)]

    seeds = [(i, f) for i in sorted(nfa.initials) for f in sorted(nfa.finals)]
    parent: dict[tuple[int, int], tuple | None] = {s: None for s in seeds}
    order = list(seeds)
    queue = deque(seeds)
    while queue:
        x, y = queue.popleft()
        for a, x2 in nfa.edges[x]:
            for b, y2 in preds[y]:
                nxt = (x2, y2)
                if nxt not in parent:
                    parent[nxt] = ((x, y), a, b)
                    order.append(nxt)
                    queue.append(nxt)

    def outer(pair) -> tuple[Word, Word]:
        steps = []
        while parent[pair] is not None:
            pair, a, b = parent[pair]
            steps.append((a, b))
        steps.reverse()
        return tuple(a for a, _ in steps), tuple(b for _, b in reversed(steps))

    for x, y in order:
        for a, r in nfa.edges[x]:
            if r == y and h[a] != a:
                p, s = outer((x, y))
                return p + (a,) + s
        for a, x2 in nfa.edges[x]:
            for b, y2 in preds[y]:
                if y2 not in reach[x2]:
                    continue
                if a != h[b] or b != h[a]:
                    p, s = outer((x, y))
                    q = _shortest_between(nfa, x2, y2)
                    return p + (a,) + q + (b,) + s
    return None


def theta_fixed_witness(z: Nfa, theta: ThetaSpec) -> Word | None:
    """A word of ``z`` that ``theta`` moves, or ``None`` if it fixes every word."""
    if theta.is_anti:
        return _anti_fixed_witness(z, theta)
    return _auto_fixed_witness(z, theta)


def is_theta_fixed_subset(z: Nfa, theta: ThetaSpec) -> bool:
    return theta_fixed_witness(z, theta) is None


# -- dispatch --------------------------------------------------------------


def underline_image(x: Nfa, spec: RelationSpec, max_k: int = FACTOR_K_CAP) -> Nfa:
    """Words at distance ``1..k`` from some word of ``x``."""
    if spec.family == "prefix":
        return underline_prefix_image(x, spec.k)
    if spec.family == "suffix":
        return underline_suffix_image(x, spec.k)
    if spec.family == "factor":
        return underline_factor_image(x, spec.k, max_k)
    return td.image(build_underline_theta(spec.theta), x)


def hat_image(x: Nfa, spec: RelationSpec, max_k: int = FACTOR_K_CAP) -> Nfa:
    """Words at distance ``0..k`` from some word of ``x``."""
    if spec.family == "theta":
        return fa.union(x, theta_image(spec.theta, x))
    return fa.union(x, underline_image(x, spec, max_k))


def related(spec: RelationSpec, w: Word, w2: Word) -> bool:
    """Direct test of ``1 <= d(w, w2) <= k`` (oracle-free helper for witnesses)."""
    d = spec.distance(w, w2)
    return 1 <= d <= spec.k
