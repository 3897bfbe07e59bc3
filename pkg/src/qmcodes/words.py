"""Word-level primitives over a finite alphabet.

Words are tuples of small integers (symbol indices into an :class:`Alphabet`).
The empty tuple is the empty word and prints as ``_``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]

EMPTY: Word = ()
EPSILON_TEXT = "_"
_RESERVED = set("()+*_, \t\n")


class WordError(ValueError):
    """Raised for malformed alphabets, words, or permutations."""


class Alphabet:
    """An ordered set of single-character symbols (at least two)."""

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        if len(symbols) < 2:
            raise WordError("an alphabet needs at least two symbols")
        if len(set(symbols)) != len(symbols):
            raise WordError(f"duplicate symbols in alphabet {symbols!r}")
        for s in symbols:
            if len(s) != 1 or s in _RESERVED:
                raise WordError(f"invalid alphabet symbol {s!r}")
        self.symbols = symbols
        self._index = {s: i for i, s in enumerate(symbols)}

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(range(len(self.symbols)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and other.symbols == self.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"Alphabet({''.join(self.symbols)!r})"

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise WordError(f"unknown symbol {symbol!r}") from None

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def parse(self, text: str) -> Word:
        text = text.strip()
        if text in ("", EPSILON_TEXT):
            return EMPTY
        return tuple(self.index(c) for c in text)

    def format(self, word: Sequence[int]) -> str:
        if not word:
            return EPSILON_TEXT
        return "".join(self.symbols[i] for i in word)

    def words(self, max_len: int, min_len: int = 0) -> Iterator[Word]:
        """All words with ``min_len <= |w| <= max_len`` in length-lex order."""
        for n in range(min_len, max_len + 1):
            yield from itertools.product(range(len(self.symbols)), repeat=n)


def reverse(w: Word) -> Word:
    return w[::-1]


def is_prefix(p: Word, w: Word) -> bool:
    return w[: len(p)] == p


def is_suffix(s: Word, w: Word) -> bool:
    return len(s) <= len(w) and w[len(w) - len(s):] == s


def is_factor(f: Word, w: Word) -> bool:
    n = len(f)
    return any(w[i:i + n] == f for i in range(len(w) - n + 1))


def factors(w: Word) -> set[Word]:
    return {w[i:j] for i in range(len(w) + 1) for j in range(i, len(w) + 1)}


def longest_common_prefix(w: Word, w2: Word) -> Word:
    n = 0
    for x, y in zip(w, w2):
        if x != y:
            break
        n += 1
    return w[:n]


def prefix_distance(w: Word, w2: Word) -> int:
    return len(w) + len(w2) - 2 * len(longest_common_prefix(w, w2))


def suffix_distance(w: Word, w2: Word) -> int:
    return prefix_distance(reverse(w), reverse(w2))


def longest_common_factor_length(w: Word, w2: Word) -> int:
    # O(|w|*|w2|) dynamic programme; only the length matters for d_F.
    best = 0
    prev = [0] * (len(w2) + 1)
    for x in w:
        cur = [0] * (len(w2) + 1)
        for j, y in enumerate(w2):
            if x == y:
                cur[j + 1] = prev[j] + 1
                if cur[j + 1] > best:
                    best = cur[j + 1]
        prev = cur
    return best


def factor_distance(w: Word, w2: Word) -> int:
    return len(w) + len(w2) - 2 * longest_common_factor_length(w, w2)


def borders(w: Word) -> list[int]:
    """Failure function: ``borders(w)[i]`` is the longest proper border of ``w[:i+1]``."""
    fail = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    return fail


def is_overlapping_free(w: Word) -> bool:
    """True iff ``w`` has no border of length ``1..|w|-1``."""
    if not w:
        raise WordError("overlapping-freeness is undefined for the empty word")
    return borders(w)[-1] == 0


def companion_letter(a: int) -> int:
    """Least symbol index different from ``a``."""
    return 1 if a == 0 else 0


def make_overlapping_free(z0: Word) -> Word:
    """``z0 a b^|z0|`` with ``a`` the initial letter of ``z0`` and ``b`` its companion."""
    if not z0:
        raise WordError("make_overlapping_free needs a non-empty word")
    a = z0[0]
    b = companion_letter(a)
    return z0 + (a,) + (b,) * len(z0)


def conjugacy_splits(t: Word, v: Word, v2: Word) -> list[tuple[Word, Word]]:
    """Pairs ``(alpha, beta)`` with ``beta`` non-empty, ``alpha beta = t`` and ``v2 = beta alpha v``."""
    out = []
    for i in range(len(t)):
        alpha, beta = t[:i], t[i:]
        if beta + alpha + v == v2:
            out.append((alpha, beta))
    return out


def _perm_order(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    order = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        n, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            n += 1
        order = order * n // math.gcd(order, n)
    return order


@dataclass(frozen=True)
class ThetaSpec:
    """A free-monoid automorphism (``kind='auto'``) or anti-automorphism (``'anti'``).

    ``perm[i]`` is the image of symbol ``i``.
    """

    alphabet: Alphabet
    perm: tuple[int, ...]
    kind: str = "auto"

    def __post_init__(self):
        if self.kind not in ("auto", "anti"):
            raise WordError(f"theta kind must be 'auto' or 'anti', got {self.kind!r}")
        if sorted(self.perm) != list(range(len(self.alphabet))):
            raise WordError("theta permutation is not a bijection on the alphabet")

    @classmethod
    def from_pairs(cls, alphabet: Alphabet, pairs: dict[str, str], kind: str = "auto") -> "ThetaSpec":
        perm = list(range(len(alphabet)))
        for src, dst in pairs.items():
            perm[alphabet.index(src)] = alphabet.index(dst)
        return cls(alphabet, tuple(perm), kind)

    @property
    def is_anti(self) -> bool:
        return self.kind == "anti"

    @property
    def permutation_order(self) -> int:
        return _perm_order(self.perm)

    @property
    def order(self) -> int:
        """Least ``n >= 1`` with theta^n equal to the identity map on words."""
        n = self.permutation_order
        if self.is_anti:
            # theta^n = reversal^n o h^n, so n must also be even
            return n * 2 // math.gcd(n, 2)
        return n

    @property
    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return tuple(inv)

    @property
    def fixed_letters(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.perm) if i == j)

    def inverse(self) -> "ThetaSpec":
        return ThetaSpec(self.alphabet, self.inverse_perm, self.kind)

    def __call__(self, w: Word) -> Word:
        return theta_apply(self, w)

    def to_text(self) -> str:
        a = self.alphabet
        return ",".join(f"{a.symbols[i]}:{a.symbols[j]}" for i, j in enumerate(self.perm))


def theta_apply(theta: ThetaSpec, w: Word) -> Word:
    image = tuple(theta.perm[c] for c in w)
    return image[::-1] if theta.is_anti else image


def theta_distance(theta: ThetaSpec, w: Word, w2: Word) -> int:
    if w == w2:
        return 0
    if theta_apply(theta, w) == w2:
        return 1
    return 2


def distance_matrix(words: Sequence[Word], metric: str, backend: str | None = None):
    """Pairwise ``prefix``/``suffix``/``factor`` distances as an ``int64`` matrix."""
    from . import _kernels

    return _kernels.pairwise(metric, words, backend=backend)
