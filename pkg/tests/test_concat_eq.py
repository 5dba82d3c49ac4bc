import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from langprime import automata as fa
from langprime.automata import Dfa
from langprime.concat_eq import MISSING_FROM_L, MISSING_FROM_PRODUCT, ConcatEqVerdict, concat_equiv
from langprime.errors import AlphabetMismatchError, InfiniteLanguageError
from langprime.reductions import RelTilingInstance, rel_to_concat

from conftest import lang, word_sets
from oracles import concat_words, shortlex


def test_equal_example():
    v = concat_equiv(lang("ab"), lang("a", alphabet="ab"), lang("b", alphabet="ab"))
    assert v == ConcatEqVerdict(True)


def test_unequal_example():
    v = concat_equiv(lang("ab", "aa"), lang("a", alphabet="ab"), lang("b", alphabet="ab"))
    assert not v.equal
    assert v.counterexample == ("a", "a")
    assert v.direction == MISSING_FROM_PRODUCT


def test_missing_from_l():
    v = concat_equiv(lang("ab", alphabet="ab"), lang("a", alphabet="ab"), lang("a", "b"))
    assert v == ConcatEqVerdict(False, ("a", "a"), MISSING_FROM_L)


def test_gadget_full_word_counterexample():
    r = RelTilingInstance(("t",), {("t", "t")}, {("t", "t")}, 2)
    v = concat_equiv(*rel_to_concat(r))
    assert v == ConcatEqVerdict(False, ("t@1", "t@2", "t@3", "t@4"), MISSING_FROM_PRODUCT)


def test_errors():
    with pytest.raises(AlphabetMismatchError):
        concat_equiv(lang("ab"), lang("a"), lang("b"))
    loop = Dfa(("a",), ({"a": 0},), 0, {0})
    with pytest.raises(InfiniteLanguageError):
        concat_equiv(loop, lang("a"), lang("a"))


def test_verdict_validation():
    with pytest.raises(ValueError):
        ConcatEqVerdict(True, ("a",), MISSING_FROM_L)
    with pytest.raises(ValueError):
        ConcatEqVerdict(False, ("a",), "sideways")


def triples(letters="ab"):
    return st.tuples(*(word_sets(letters, max_words=4, max_len=3) for _ in range(3)))


@settings(max_examples=300, deadline=None)
@given(triples(), st.booleans())
def test_matches_word_sets(sets, force_equal):
    x, y, z = sets
    if force_equal:
        x = concat_words(y, z)
    ds = [fa.from_words(s, "ab") for s in (x, y, z)]
    v = concat_equiv(*ds)
    product = concat_words(y, z)
    assert v.equal == (x == product)
    if not v.equal:
        assert v.counterexample == shortlex(x ^ product)[0]
        expected = MISSING_FROM_PRODUCT if v.counterexample in x else MISSING_FROM_L
        assert v.direction == expected


@settings(max_examples=300, deadline=None)
@given(triples())
def test_counterexample_length_bound(sets):
    ds = [fa.minimize(fa.from_words(s, "ab")) for s in sets]
    v = concat_equiv(*ds)
    if not v.equal:
        bound = ds[0].num_states - 1 + ds[1].num_states + ds[2].num_states
        assert len(v.counterexample) <= bound


@settings(max_examples=200, deadline=None)
@given(word_sets("ab", max_words=4, max_len=3), st.lists(st.sampled_from("ab"), max_size=4).map(tuple))
def test_direction_flips_with_perturbation_side(base, w):
    # with L1 = {ε} the product is L2 itself, so w can sit on either side
    if w in base:
        base = base - {w}
    eps = fa.from_words([()], "ab")
    on_lang = concat_equiv(fa.from_words(base | {w}, "ab"), eps, fa.from_words(base, "ab"))
    on_product = concat_equiv(fa.from_words(base, "ab"), eps, fa.from_words(base | {w}, "ab"))
    assert on_lang == ConcatEqVerdict(False, w, MISSING_FROM_PRODUCT)
    assert on_product == ConcatEqVerdict(False, w, MISSING_FROM_L)
