import json

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import AB, fmt, lang, words_nfa
from qmcodes import automata as fa
from qmcodes import regex as rx
from qmcodes.automata import ResourceError
from qmcodes.regex import RegexError
from qmcodes.words import Alphabet

L = 7


def regex_text(symbols="ab", depth=3):
    leaf = st.sampled_from(list(symbols) + ["_"])

    def extend(inner):
        return st.one_of(
            st.tuples(inner, inner).map(lambda p: f"({p[0]}+{p[1]})"),
            st.tuples(inner, inner).map(lambda p: f"{p[0]}{p[1]}"),
            inner.map(lambda r: f"({r})*"),
        )

    return st.recursive(leaf, extend, max_leaves=8)


@settings(max_examples=80, deadline=None)
@given(regex_text())
def test_compile_regex_matches_python_re(expr):
    nfa = fa.compile_regex(expr, AB)
    assert lang(nfa, L) == oracles.regex_language(expr, "ab", L)


@pytest.mark.parametrize(
    "expr, inside, outside",
    [
        ("a(b)*a", ["aa", "aba", "abbbba"], ["ab", "a", "abab"]),
        ("_", ["_"], ["a", "b"]),
        ("(a+b)(a+b)(a+b)", ["aaa", "bab"], ["aa", "aaaa"]),
    ],
)
def test_compile_regex_examples(expr, inside, outside):
    nfa = fa.compile_regex(expr, AB)
    assert all(nfa.accepts(AB.parse(w)) for w in inside)
    assert not any(nfa.accepts(AB.parse(w)) for w in outside)


@pytest.mark.parametrize("expr, pos", [("a(b", 1), ("a+", 2), ("*a", 0), ("ac", 1), ("", 0), ("a)", 1)])
def test_regex_errors_carry_position(expr, pos):
    with pytest.raises(RegexError) as info:
        fa.compile_regex(expr, AB)
    assert info.value.position == pos


def test_regex_text_round_trip():
    for expr in ["(a+b)*ab", "a*b", "_+a(ba)*", "((a+_)b)*"]:
        r = rx.parse(expr, AB)
        again = rx.parse(rx.to_text(r, AB), AB)
        assert fa.equivalent(fa.from_regex(r, AB), fa.from_regex(again, AB))


def test_boolean_ops_examples():
    x = words_nfa("a,ba,bb")
    y = words_nfa("b,ba")
    assert fmt(lang(fa.intersection(x, y), 4)) == {"ba"}
    assert fmt(lang(fa.difference(x, y), 4)) == {"a", "bb"}
    assert fa.is_empty(fa.intersection(x, fa.complement(x)))
    assert fa.is_empty(fa.complement(fa.universe(AB)))
    assert fmt(lang(fa.union(x, y), 4)) == {"a", "b", "ba", "bb"}


def test_regular_ops_examples():
    x = words_nfa("a,ba,bb")
    assert fa.star(x).accepts(AB.parse("babb"))
    assert not fa.star(x).accepts(AB.parse("bab"))
    lang_x = fa.compile_regex("ab*a", AB)
    assert fa.equivalent(fa.reverse(lang_x), lang_x)
    assert fmt(lang(fa.star(fa.empty(AB)), 3)) == {"_"}
    assert fmt(lang(fa.concat(words_nfa("a,b"), words_nfa("b")), 3)) == {"ab", "bb"}


finite_sets = st.sets(st.lists(st.integers(0, 1), max_size=5).map(tuple), max_size=5)


@settings(max_examples=60, deadline=None)
@given(finite_sets, finite_sets)
def test_boolean_and_regular_ops_match_sets(s1, s2):
    a, b = fa.from_words(AB, s1), fa.from_words(AB, s2)
    assert lang(fa.union(a, b), 5) == s1 | s2
    assert lang(fa.intersection(a, b), 5) == s1 & s2
    assert lang(fa.difference(a, b), 5) == s1 - s2
    assert lang(fa.concat(a, b), 10) == {x + y for x in s1 for y in s2}
    assert lang(fa.reverse(a), 5) == {w[::-1] for w in s1}


@settings(max_examples=60, deadline=None)
@given(finite_sets, finite_sets)
def test_quotients_match_brute_force(s1, s2):
    a, b = fa.from_words(AB, s1), fa.from_words(AB, s2)
    left = {z[len(y):] for z in s1 for y in s2 if z[: len(y)] == y}
    right = {z[: len(z) - len(y)] for z in s1 for y in s2 if len(y) <= len(z) and z[len(z) - len(y):] == y}
    assert lang(fa.quotient(a, b, "left"), 5) == left
    assert lang(fa.quotient(a, b, "right"), 5) == right


def test_quotient_examples():
    assert fmt(lang(fa.left_quotient(words_nfa("baa"), words_nfa("b")), 4)) == {"aa"}
    assert fmt(lang(fa.left_quotient(words_nfa("a,ab"), words_nfa("a")), 4)) == {"_", "b"}
    assert fa.is_empty(fa.left_quotient(fa.empty(AB), words_nfa("a")))
    with pytest.raises(ValueError):
        fa.quotient(words_nfa("a"), words_nfa("a"), "middle")


@settings(max_examples=60, deadline=None)
@given(regex_text())
def test_double_complement_and_de_morgan(expr):
    a = fa.compile_regex(expr, AB)
    b = fa.compile_regex("(ab)*+b", AB)
    assert fa.equivalent(fa.complement(fa.complement(a)), a)
    assert fa.equivalent(fa.reverse(fa.reverse(a)), a)
    assert fa.equivalent(fa.complement(fa.union(a, b)), fa.intersection(fa.complement(a), fa.complement(b)))


@settings(max_examples=60, deadline=None)
@given(regex_text())
def test_factor_closure_is_closed_and_contains(expr):
    a = fa.compile_regex(expr, AB)
    closed = fa.factor_closure(a)
    got = lang(closed, 6)
    assert lang(a, 6) <= got
    for w in got:
        assert oracles.factor_set(w) <= got


def test_factor_closure_examples():
    assert fmt(lang(fa.factor_closure(words_nfa("abb")), 5)) == {"_", "a", "b", "ab", "bb", "abb"}
    assert fa.equivalent(fa.factor_closure(fa.universe(AB)), fa.universe(AB))
    assert fa.is_empty(fa.factor_closure(fa.empty(AB)))


def test_shortest_word():
    assert fa.shortest_word(fa.empty(AB)) is None
    comp = fa.complement(fa.factor_closure(fa.star(words_nfa("a,ba,bb"))))
    assert fa.is_empty(comp)
    comp = fa.complement(fa.factor_closure(fa.star(words_nfa("ab,ba"))))
    w = fa.shortest_word(comp)
    # aa occurs inside ba.ab, so every word of length 2 is a factor; aaa is the first miss
    code = [(0, 1), (1, 0)]
    assert oracles.factors_of_star(code, 2) == set(oracles.all_words(2, 2, 2))
    assert (0, 0, 0) not in oracles.factors_of_star(code, 3)
    assert AB.format(w) == "aaa"


@settings(max_examples=60, deadline=None)
@given(regex_text())
def test_shortest_word_is_length_lex_least(expr):
    a = fa.compile_regex(expr, AB)
    ws = sorted(oracles.regex_language(expr, "ab", 6), key=lambda w: (len(w), w))
    got = fa.shortest_word(a)
    if ws:
        assert got == ws[0]
    else:
        assert got is None or len(got) > 6


def test_dfa_equality_examples():
    eq = lambda e1, e2: fa.dfa_equal(fa.determinize_minimize(fa.compile_regex(e1, AB)),
                                     fa.determinize_minimize(fa.compile_regex(e2, AB)))
    assert eq("a(a)*", "(a)*a")
    assert eq("(a+b)*", "(b+a)*")
    assert not eq("ab", "ba")


def test_minimal_dfa_is_minimal():
    d = fa.determinize_minimize(fa.compile_regex("(a+b)*abb", AB))
    assert d.n == 4
    assert fa.determinize_minimize(fa.universe(AB)).n == 1


def test_map_letters():
    swap = (1, 0)
    assert fa.equivalent(fa.map_letters(fa.compile_regex("a*b", AB), swap), fa.compile_regex("b*a", AB))
    x = fa.compile_regex("a(b+a)*", AB)
    assert fa.equivalent(fa.map_letters(x, (0, 1)), x)
    dna = Alphabet("ACGT")
    wc = tuple(dna.index(c) for c in "TGCA")
    img = fa.map_letters(fa.from_word(dna, dna.parse("GA")), wc)
    assert fmt(lang(img, 3), dna) == {"CT"}


def test_subset_cap_raises():
    # (a+b)*a(a+b)^n needs 2^(n+1) subset states
    nfa = fa.compile_regex("(a+b)*a(a+b)(a+b)(a+b)(a+b)(a+b)", AB)
    with pytest.raises(ResourceError):
        fa.determinize(nfa, cap=16)
    assert fa.determinize_minimize(nfa).n == 64


def test_to_regex_round_trip_and_unambiguity():
    for expr in ["(a+b)*abb", "ab*a+ba*b", "a(ab)*a", "_", "(aa)*"]:
        nfa = fa.compile_regex(expr, AB)
        back = fa.from_regex(fa.to_regex(nfa), AB)
        assert fa.equivalent(back, nfa)
    assert isinstance(fa.to_regex(fa.empty(AB)), rx.Empty)


def test_json_dumps():
    d = json.loads(words_nfa("ab").to_json())
    assert d["alphabet"] == ["a", "b"] and d["finals"]
    d = json.loads(fa.determinize(words_nfa("ab")).to_json())
    assert len(d["table"]) >= 3


def test_alphabet_mismatch():
    with pytest.raises(ValueError):
        fa.union(words_nfa("a"), fa.empty(Alphabet("xy")))
