import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import AB, words_nfa
from corpus import corpus, watson_crick_code
from qmcodes import automata as fa
from qmcodes import codes
from qmcodes.words import WordError

P = AB.parse


def test_sp_trace_non_code():
    chain = codes.sardinas_patterson(words_nfa("a,ab,baa"))
    assert not chain.is_code
    assert chain.describe() == [["b"], ["aa"], ["a"], ["_", "b"]]
    assert chain.stop_index == 3


@pytest.mark.parametrize("text", ["a,ba,bb", "a", "ab,ba", "aab,abb,bbb"])
def test_sp_codes(text):
    assert codes.sardinas_patterson(words_nfa(text)).is_code


def test_sp_empty_word_convention():
    assert not codes.is_code(words_nfa("_,a"))
    with pytest.raises(WordError):
        codes.sardinas_patterson(words_nfa("_"))


def test_sp_on_infinite_sets():
    assert codes.is_code(fa.compile_regex("ab*a+ba*b", AB))
    assert codes.is_code(fa.compile_regex("a*b", AB))
    assert not codes.is_code(fa.compile_regex("a+ab+b(a)*", AB))


small_codes = st.sets(st.lists(st.integers(0, 1), min_size=1, max_size=4).map(tuple), min_size=1, max_size=5)


@settings(max_examples=120, deadline=None)
@given(small_codes)
def test_sp_matches_double_factorization_search(xs):
    assert codes.is_code(fa.from_words(AB, xs)) == oracles.is_code(xs, 12)


@settings(max_examples=60, deadline=None)
@given(small_codes)
def test_measure_of_finite_sets(xs):
    x = fa.from_words(AB, xs)
    m = codes.measure(x)
    assert m == oracles.measure_finite(xs, 2)
    assert codes.partial_measure(x, 32) == m
    if codes.is_code(x):
        assert m <= 1


def test_measure_examples():
    assert codes.measure(words_nfa("a,ba,bb")) == 1
    assert codes.measure(watson_crick_code()) == Fraction(3, 4)
    assert codes.measure(fa.compile_regex("ab*a+ba*b", AB)) == 1
    assert codes.measure(fa.universe(AB)) == math.inf
    assert codes.measure(fa.empty(AB)) == 0
    assert codes.format_measure(Fraction(3, 4)) == "3/4"
    assert codes.format_measure(Fraction(1)) == "1/1"
    assert codes.format_measure(math.inf) == "inf"


def test_partial_sums_bound_the_measure():
    for _, x in corpus():
        m = codes.measure(x)
        assert codes.partial_measure(x, 32) <= m


def test_length_counts():
    assert codes.length_counts(fa.compile_regex("a*b", AB), 4) == [0, 1, 1, 1, 1]
    assert codes.length_counts(fa.universe(AB), 3) == [1, 2, 4, 8]


def test_completeness_examples():
    assert codes.is_complete(words_nfa("a,ba,bb"))
    assert codes.is_complete(fa.compile_regex("(a+b)(a+b)(a+b)", AB))
    assert not codes.is_complete(words_nfa("aa"))


def test_completeness_matches_unit_measure_on_corpus():
    for name, x in corpus():
        if codes.is_code(x):
            assert codes.measure(x) <= 1, name
            assert codes.is_complete(x) == (codes.measure(x) == 1), name


def test_find_non_factor_examples():
    assert AB.format(codes.find_non_factor(words_nfa("aa"))) == "b"
    assert AB.format(codes.find_non_factor(fa.empty(AB))) == "a"
    assert AB.format(codes.find_non_factor(words_nfa("aa"), 3)) == "baa"
    with pytest.raises(ValueError):
        codes.find_non_factor(words_nfa("a,ba,bb"))


@settings(max_examples=40, deadline=None)
@given(small_codes)
def test_find_non_factor_is_least(xs):
    x = fa.from_words(AB, xs)
    if codes.is_complete(x):
        return
    z0 = codes.find_non_factor(x)
    assert z0 not in oracles.factors_of_star(xs, len(z0))
    for w in AB.words(len(z0)):
        if (len(w), w) < (len(z0), z0):
            assert w in oracles.factors_of_star(xs, len(w))
