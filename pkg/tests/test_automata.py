import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from langprime import automata as fa
from langprime.automata import Dfa, Nfa
from langprime.errors import AlphabetMismatchError, InfiniteLanguageError, SymbolError

from conftest import lang, word_sets
from oracles import concat_words, shortlex, words


@pytest.fixture
def ab():
    # chain s -a-> q1 -b-> q2 for {ab}
    return Dfa(("a", "b"), ({"a": 1}, {"b": 2}, {}), 0, {2})


def test_run_and_accepts(ab):
    assert fa.run(ab, "ab") == 2 and ab.accepts("ab")
    assert fa.run(ab, "") == 0 and not ab.accepts("")
    assert fa.run(ab, "ba") is None and not ab.accepts("ba")


def test_run_rejects_foreign_symbol(ab):
    with pytest.raises(SymbolError):
        fa.run(ab, "ac")


def test_visited_states(ab):
    assert fa.visited_states(ab, "ab") == [1, 2]
    assert fa.visited_states(ab, "") == []
    assert fa.visited_states(ab, "aa") == [1]


def test_dfa_validation():
    with pytest.raises(SymbolError):
        Dfa(("a",), ({"b": 0},), 0, set())
    with pytest.raises(ValueError):
        Dfa(("a",), ({"a": 3},), 0, set())
    with pytest.raises(ValueError):
        Dfa(("a",), ({},), 1, set())
    with pytest.raises(SymbolError):
        Dfa(("a b",), ({},), 0, set())


def test_is_finite():
    assert fa.is_finite(lang("ab"))
    loop = Dfa(("a",), ({"a": 0},), 0, {0})
    assert not fa.is_finite(loop)
    # the cycle 1 <-> 2 can never reach an accepting state
    trimmed = Dfa(("a", "b"), ({"a": 3, "b": 1}, {"a": 2}, {"a": 1}, {}), 0, {3})
    assert fa.is_finite(trimmed)


def test_enumerate_words():
    sigma1 = Dfa(("a", "b"), ({"a": 1, "b": 1}, {}), 0, {1})
    assert fa.enumerate_words(sigma1) == [("a",), ("b",)]
    assert fa.enumerate_words(fa.empty_dfa("ab")) == []
    with pytest.raises(InfiniteLanguageError):
        fa.enumerate_words(Dfa(("a",), ({"a": 0},), 0, {0}))


def test_count_words_matches_enumeration():
    d = lang("", "a", "ab", "ba", "bab")
    assert fa.count_words(d) == len(fa.enumerate_words(d)) == 5


def test_product_intersect():
    a = lang("ab", "ba")
    b = lang("ab", alphabet="ab")
    p = fa.product_intersect(a, b)
    assert fa.enumerate_words(p) == [("a", "b")]
    assert p.num_states <= a.num_states * b.num_states
    assert fa.enumerate_words(fa.product_intersect(a, fa.empty_dfa("ab"))) == []
    assert fa.language_equal(fa.product_intersect(a, a), a)


def test_product_alphabet_mismatch():
    with pytest.raises(AlphabetMismatchError):
        fa.product_intersect(lang("a"), lang("b"))


def test_union():
    u = fa.union(lang("a", alphabet="ab"), lang("b", alphabet="ab"))
    assert u.num_states == 4
    assert fa.enumerate_words(fa.determinize(u)) == [("a",), ("b",)]
    same = fa.determinize(fa.union(lang("ab"), fa.empty_dfa("ab")))
    assert fa.language_equal(same, lang("ab"))


def test_concat_examples():
    a, b = lang("a", alphabet="ab"), lang("b", alphabet="ab")
    assert fa.enumerate_words(fa.determinize(fa.concat(a, b))) == [("a", "b")]
    eps = lang("", alphabet="ab")
    assert fa.language_equal(fa.determinize(fa.concat(eps, lang("ab", "b"))), lang("ab", "b"))
    ea = lang("", "a")
    assert fa.enumerate_words(fa.determinize(fa.concat(ea, ea))) == [(), ("a",), ("a", "a")]


def test_determinize_of_lifted_dfa(ab):
    assert fa.language_equal(fa.determinize(fa.as_nfa(ab)), ab)
    assert fa.enumerate_words(fa.determinize(fa.union(lang("a"), lang("a")))) == [("a",)]


def test_determinize_empty_initial_set():
    n = Nfa(("a",), ({},), frozenset(), frozenset())
    assert fa.is_empty(fa.determinize(n))


def test_minimize_canonical():
    # two different DFAs for {ab}
    d1 = Dfa(("a", "b"), ({"a": 1}, {"b": 2}, {}), 0, {2})
    d2 = Dfa(("a", "b"), ({}, {"a": 3}, {"b": 0}, {"b": 0}), 1, {0}, ("x", "y", "z", "w"))
    assert fa.minimize(d1) == fa.minimize(d2)


def test_minimize_keeps_minimal_chain():
    # Σ³ over {a, b}: n + 1 = 4 states
    chain = Dfa(("a", "b"), tuple({"a": i + 1, "b": i + 1} for i in range(3)) + ({},), 0, {3})
    m = fa.minimize(chain)
    assert m.num_states == 4 and m == chain


def test_minimize_empty_language():
    m = fa.minimize(Dfa(("a",), ({"a": 1}, {}), 0, set()))
    assert m.num_states == 1 and not m.accepting


def test_equivalent_counterexample():
    assert fa.equivalent(lang("ab"), lang("ab")) == (True, None)
    assert fa.equivalent(lang("ab"), lang("ab", "ba")) == (False, ("b", "a"))
    assert fa.equivalent(lang("", alphabet="a"), fa.empty_dfa("a")) == (False, ())


def test_equivalent_alphabet_mismatch():
    with pytest.raises(AlphabetMismatchError):
        fa.equivalent(lang("a"), lang("a", "b"))


def test_rename_and_extend():
    d = fa.rename_symbols(lang("ab"), {"a": "x", "b": "y"})
    assert fa.enumerate_words(d) == [("x", "y")]
    e = fa.extend_alphabet(d, {"x", "y", "z"})
    assert e.alphabet == ("x", "y", "z") and fa.enumerate_words(e) == [("x", "y")]


# -- properties against the word-set oracle --------------------------------------


@st.composite
def random_dfa(draw, max_states=6, letters="ab"):
    n = draw(st.integers(1, max_states))
    delta = []
    for _ in range(n):
        row = {}
        for a in letters:
            target = draw(st.one_of(st.none(), st.integers(0, n - 1)))
            if target is not None:
                row[a] = target
        delta.append(row)
    accepting = draw(st.frozensets(st.integers(0, n - 1)))
    return Dfa(tuple(letters), tuple(delta), 0, accepting)


def acyclic_dfa(max_states=6, letters="ab"):
    return word_sets(letters, max_words=6, max_len=max_states - 1).map(
        lambda ws: fa.minimize(fa.from_words(ws, letters))
    )


@given(word_sets())
def test_accepts_iff_enumerated(ws):
    d = fa.from_words(ws, "ab")
    enumerated = fa.enumerate_words(d)
    assert enumerated == shortlex(ws)
    for w in enumerated:
        assert d.accepts(w)
    for w in words("", "a", "b", "ab", "ba", "aaa", "bbbb"):
        assert d.accepts(w) == (w in ws)


@given(acyclic_dfa(), acyclic_dfa())
def test_concat_matches_word_sets(a, b):
    got = fa.enumerate_words(fa.determinize(fa.concat(a, b)))
    expected = concat_words(fa.enumerate_words(a), fa.enumerate_words(b))
    assert got == shortlex(expected)


@given(word_sets(), word_sets())
def test_product_matches_word_sets(x, y):
    p = fa.product_intersect(fa.from_words(x, "ab"), fa.from_words(y, "ab"))
    assert fa.enumerate_words(p) == shortlex(x & y)


@settings(max_examples=200)
@given(random_dfa())
def test_minimize_equivalent_and_idempotent(d):
    m = fa.minimize(d)
    assert fa.equivalent(d, m).equal
    assert fa.minimize(m) == m
    assert m.num_states <= max(1, len(fa.useful_states(d)))


@settings(max_examples=200)
@given(random_dfa(), random_dfa())
def test_counterexample_is_shortlex_least(a, b):
    equal, w = fa.equivalent(a, b)
    # brute force over all words up to length 6
    diff = None
    for k in range(7):
        for cand in itertools.product("ab", repeat=k):
            if a.accepts(cand) != b.accepts(cand):
                diff = cand
                break
        if diff is not None:
            break
    if equal:
        assert diff is None
    else:
        assert a.accepts(w) != b.accepts(w)
        if diff is not None:
            assert w == diff


@given(acyclic_dfa())
def test_finite_words_shorter_than_state_count(d):
    assert all(len(w) <= d.num_states - 1 for w in fa.enumerate_words(d))
