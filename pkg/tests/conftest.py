import random

import pytest
from hypothesis import strategies as st

from langprime import automata as fa

import acceptance_log


def lang(*texts, alphabet=None):
    """DFA for a word list given as strings of single-character symbols."""
    ws = [tuple(t) for t in texts]
    if alphabet is None:
        alphabet = {a for w in ws for a in w} or {"a"}
    return fa.from_words(ws, alphabet)


def random_language(rng, letters="abc", max_words=10, max_len=4):
    sigma = letters[: rng.randint(1, len(letters))]
    count = rng.randint(0, max_words)
    ws = set()
    for _ in range(count):
        k = rng.randint(0, max_len)
        ws.add(tuple(rng.choice(sigma) for _ in range(k)))
    return frozenset(ws), sigma


def word_sets(letters="ab", max_words=6, max_len=3):
    word = st.lists(st.sampled_from(letters), max_size=max_len).map(tuple)
    return st.frozensets(word, max_size=max_words)


@pytest.fixture
def rng():
    return random.Random(20260817)


def pytest_terminal_summary(terminalreporter):
    if acceptance_log.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.RESULTS:
            terminalreporter.write_line(line)
