import itertools
import json

from hypothesis import given, settings, strategies as st

import oracles
from conftest import AB, fmt, lang, words_nfa
from qmcodes import automata as fa
from qmcodes import transducers as td
from qmcodes.automata import EPS
from qmcodes.relations import build_underline_prefix

P = AB.parse
WORDS5 = list(AB.words(5))


def relation_set(t, max_len):
    return {(w, w2) for w in AB.words(max_len) for w2 in AB.words(max_len) if td.relation_contains(t, w, w2)}


def test_normalize_splits_word_pairs():
    t = td.from_word_pairs(AB, 2, [(0, P("ab"), P("b"), 1), (0, (), (), 0)], [0], [1])
    assert all(a != EPS or b != EPS for out in t.edges for a, b, _ in out)
    assert relation_set(t, 3) == {(P("ab"), P("b"))}


def test_empty_pair_edges_are_removed_without_changing_relation():
    t = td.from_word_pairs(AB, 3, [(0, (), (), 1), (1, P("a"), P("b"), 2)], [0], [2])
    assert relation_set(t, 2) == {(P("a"), P("b"))}
    assert all(not (a == EPS and b == EPS) for out in t.edges for a, b, _ in out)


def test_relation_contains_examples():
    p2 = build_underline_prefix(2, AB)
    p1 = build_underline_prefix(1, AB)
    assert td.relation_contains(p2, P("ba"), P("bb"))
    assert not any(td.relation_contains(p2, w, w) for w in WORDS5)
    assert not td.relation_contains(p1, P("a"), P("ba"))


def test_image_examples():
    p1 = build_underline_prefix(1, AB)
    ball = fa.union(td.image(p1, words_nfa("ba")), words_nfa("ba"))
    assert fmt(lang(ball, 5)) == {"b", "ba", "baa", "bab"}
    x = fa.compile_regex("a*b+ba", AB)
    assert fa.equivalent(td.image(td.identity(AB), x), x)
    assert fa.is_empty(td.image(p1, fa.empty(AB)))


def _random_transducer(draw_edges):
    edges = [(s, u, v, d) for s, u, v, d in draw_edges]
    return td.from_word_pairs(AB, 3, edges, [0], [2])


word2 = st.lists(st.integers(0, 1), max_size=2).map(tuple)
edge = st.tuples(st.integers(0, 2), word2, word2, st.integers(0, 2))
transducer = st.lists(edge, min_size=1, max_size=6).map(_random_transducer)


@settings(max_examples=40, deadline=None)
@given(transducer, transducer)
def test_union_and_inverse_brute_force(t1, t2):
    r1, r2 = relation_set(t1, 3), relation_set(t2, 3)
    assert relation_set(td.union(t1, t2), 3) == r1 | r2
    assert relation_set(td.inverse(t1), 3) == {(b, a) for a, b in r1}
    assert relation_set(td.inverse(td.inverse(t1)), 3) == r1
    assert relation_set(td.union(t1, td.empty_relation(AB)), 3) == r1


@settings(max_examples=30, deadline=None)
@given(transducer, transducer)
def test_composition_brute_force(t1, t2):
    middle = list(AB.words(5))
    got = relation_set(td.compose(t1, t2), 3)
    for w, w3 in itertools.product(AB.words(3), repeat=2):
        expected = any(td.relation_contains(t1, w, m) and td.relation_contains(t2, m, w3) for m in middle)
        assert ((w, w3) in got) == expected


@settings(max_examples=30, deadline=None)
@given(transducer, st.sets(st.lists(st.integers(0, 1), max_size=3).map(tuple), max_size=4))
def test_image_matches_membership(t, xs):
    img = lang(td.image(t, fa.from_words(AB, xs)), 5)
    expected = {w2 for w in xs for w2 in AB.words(5) if td.relation_contains(t, w, w2)}
    assert img == expected


def test_composed_prefix_balls_add_radii():
    hat1 = td.union(build_underline_prefix(1, AB), td.identity(AB))
    twice = td.compose(hat1, hat1)
    for w, w2 in itertools.product(WORDS5, repeat=2):
        assert td.relation_contains(twice, w, w2) == (oracles.prefix_distance(w, w2) <= 2)


def test_reverse_transducer():
    p1 = build_underline_prefix(1, AB)
    r = td.reverse(p1)
    for w, w2 in itertools.product(list(AB.words(3)), repeat=2):
        assert td.relation_contains(r, w, w2) == td.relation_contains(p1, w[::-1], w2[::-1])


def test_json_dump():
    d = json.loads(build_underline_prefix(1, AB).to_json())
    assert d["initials"] == [0] and len(d["transitions"]) > 0
