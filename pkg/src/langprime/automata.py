"""Finite automata over token alphabets with partial transition functions.

States are the integers ``0 .. n-1``; each state also carries a printable
name used by the text formats.  Symbols are non-empty whitespace-free
strings and a word is a tuple of symbols (``()`` is the empty word).
No sink state is ever materialised: a missing ``(state, symbol)`` entry
means the run stops there.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import AlphabetMismatchError, InfiniteLanguageError, SymbolError

Word = tuple  # tuple[str, ...]


def check_symbol(token):
    if not isinstance(token, str) or not token or any(c.isspace() for c in token):
        raise SymbolError(f"invalid symbol token {token!r}")
    return token


def word_key(word):
    """Sort key for words: length first, then lexicographic by token."""
    return (len(word), tuple(word))


def _normalise_alphabet(alphabet):
    # str ordering is codepoint ordering, which matches UTF-8 byte ordering
    return tuple(sorted({check_symbol(a) for a in alphabet}))


def _check_names(names, n):
    if len(names) != n:
        raise ValueError(f"expected {n} state names, got {len(names)}")
    for name in names:
        check_symbol(name)
    if len(set(names)) != n:
        raise ValueError("state names must be unique")


@dataclass(frozen=True)
class Dfa:
    """Deterministic automaton ``(Q, Σ, δ, s, F)`` with partial δ.

    ``delta[q]`` maps a symbol to the successor of ``q``; absent symbols are
    undefined transitions.
    """

    alphabet: tuple
    delta: tuple
    initial: int
    accepting: frozenset
    names: tuple = field(default=())

    def __post_init__(self):
        n = len(self.delta)
        alphabet = _normalise_alphabet(self.alphabet)
        object.__setattr__(self, "alphabet", alphabet)
        sigma = set(alphabet)
        delta = []
        for q, row in enumerate(self.delta):
            row = dict(row)
            for a, r in row.items():
                if a not in sigma:
                    raise SymbolError(f"transition on {a!r} outside the alphabet")
                if not (isinstance(r, int) and 0 <= r < n):
                    raise ValueError(f"transition target {r!r} is not a state")
            delta.append(row)
        object.__setattr__(self, "delta", tuple(delta))
        if not (isinstance(self.initial, int) and 0 <= self.initial < n):
            raise ValueError(f"initial state {self.initial!r} is not a state")
        accepting = frozenset(self.accepting)
        if not all(isinstance(q, int) and 0 <= q < n for q in accepting):
            raise ValueError("accepting states must be states")
        object.__setattr__(self, "accepting", accepting)
        names = tuple(self.names) if self.names else tuple(f"q{i}" for i in range(n))
        _check_names(names, n)
        object.__setattr__(self, "names", names)

    __hash__ = None

    @property
    def num_states(self):
        return len(self.delta)

    @property
    def num_transitions(self):
        return sum(len(row) for row in self.delta)

    def step(self, q, a):
        return self.delta[q].get(a)

    def accepts(self, word):
        q = run(self, word)
        return q is not None and q in self.accepting


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton ``(Q, Σ, δ, I, F)`` without ε-moves."""

    alphabet: tuple
    delta: tuple
    initial: frozenset
    accepting: frozenset
    names: tuple = field(default=())

    def __post_init__(self):
        n = len(self.delta)
        alphabet = _normalise_alphabet(self.alphabet)
        object.__setattr__(self, "alphabet", alphabet)
        sigma = set(alphabet)
        delta = []
        for row in self.delta:
            clean = {}
            for a, targets in dict(row).items():
                if a not in sigma:
                    raise SymbolError(f"transition on {a!r} outside the alphabet")
                targets = frozenset(targets)
                if not all(isinstance(r, int) and 0 <= r < n for r in targets):
                    raise ValueError("transition target is not a state")
                if targets:
                    clean[a] = targets
            delta.append(clean)
        object.__setattr__(self, "delta", tuple(delta))
        for attr in ("initial", "accepting"):
            states = frozenset(getattr(self, attr))
            if not all(isinstance(q, int) and 0 <= q < n for q in states):
                raise ValueError(f"{attr} states must be states")
            object.__setattr__(self, attr, states)
        names = tuple(self.names) if self.names else tuple(f"q{i}" for i in range(n))
        _check_names(names, n)
        object.__setattr__(self, "names", names)

    __hash__ = None

    @property
    def num_states(self):
        return len(self.delta)

    def accepts(self, word):
        current = set(self.initial)
        for a in _check_word(self, word):
            current = {r for q in current for r in self.delta[q].get(a, ())}
            if not current:
                return False
        return bool(current & self.accepting)


class Equivalence(NamedTuple):
    equal: bool
    counterexample: tuple | None


def _check_word(automaton, word):
    word = tuple(word)
    sigma = automaton.alphabet
    for a in word:
        if a not in sigma:
            raise SymbolError(f"symbol {a!r} is not in the alphabet")
    return word


def _same_alphabet(a, b):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(
            f"alphabets differ: {' '.join(a.alphabet)} vs {' '.join(b.alphabet)}"
        )
    return a.alphabet


# -- construction helpers ---------------------------------------------------


def from_words(words, alphabet=None):
    """Prefix-tree DFA accepting exactly ``words``.

    ``alphabet`` defaults to the symbols that occur in ``words``.
    """
    words = [tuple(w) for w in words]
    if alphabet is None:
        alphabet = {a for w in words for a in w}
    delta = [{}]
    accepting = set()
    for w in sorted(set(words), key=word_key):
        q = 0
        for a in w:
            nxt = delta[q].get(a)
            if nxt is None:
                nxt = len(delta)
                delta.append({})
                delta[q][a] = nxt
            q = nxt
        accepting.add(q)
    return Dfa(alphabet, tuple(delta), 0, frozenset(accepting))


def empty_dfa(alphabet):
    return Dfa(alphabet, ({},), 0, frozenset())


def as_nfa(d):
    if isinstance(d, Nfa):
        return d
    delta = tuple({a: frozenset((r,)) for a, r in row.items()} for row in d.delta)
    return Nfa(d.alphabet, delta, frozenset((d.initial,)), d.accepting, d.names)


def with_accepting(d, accepting):
    return Dfa(d.alphabet, d.delta, d.initial, frozenset(accepting), d.names)


def with_initial(d, initial):
    return Dfa(d.alphabet, d.delta, initial, d.accepting, d.names)


def extend_alphabet(d, alphabet):
    """Same automaton over a larger alphabet; new symbols have no transitions."""
    alphabet = set(alphabet)
    if not set(d.alphabet) <= alphabet:
        raise AlphabetMismatchError("new alphabet must contain the old one")
    if isinstance(d, Nfa):
        return Nfa(alphabet, d.delta, d.initial, d.accepting, d.names)
    return Dfa(alphabet, d.delta, d.initial, d.accepting, d.names)


def rename_symbols(d, mapping: Mapping[str, str]):
    """Apply an injective symbol renaming to a DFA."""
    if len(set(mapping[a] for a in d.alphabet)) != len(d.alphabet):
        raise SymbolError("symbol renaming must be injective")
    delta = tuple({mapping[a]: r for a, r in row.items()} for row in d.delta)
    return Dfa([mapping[a] for a in d.alphabet], delta, d.initial, d.accepting, d.names)


# -- execution --------------------------------------------------------------


def run(d: Dfa, word) -> int | None:
    """State reached after reading ``word`` from the initial state, or None."""
    q = d.initial
    for a in _check_word(d, word):
        q = d.delta[q].get(a)
        if q is None:
            return None
    return q


def accepts(d: Dfa, word) -> bool:
    return d.accepts(word)


def visited_states(d: Dfa, word) -> list:
    """States entered while reading ``word``, stopping before the first undefined step."""
    visited = []
    q = d.initial
    for a in _check_word(d, word):
        q = d.delta[q].get(a)
        if q is None:
            break
        visited.append(q)
    return visited


# -- structure --------------------------------------------------------------


def reachable_states(d):
    seen = {d.initial}
    stack = [d.initial]
    while stack:
        q = stack.pop()
        for r in d.delta[q].values():
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def coreachable_states(d):
    preds = [set() for _ in d.delta]
    for q, row in enumerate(d.delta):
        for r in row.values():
            preds[r].add(q)
    seen = set(d.accepting)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def useful_states(d):
    """States of the trim automaton: reachable and co-reachable."""
    return reachable_states(d) & coreachable_states(d)


def _topological_order(d, useful):
    """Useful states in topological order, or None when they contain a cycle."""
    indegree = {q: 0 for q in useful}
    for q in useful:
        for r in d.delta[q].values():
            if r in useful:
                indegree[r] += 1
    ready = deque(sorted(q for q, k in indegree.items() if k == 0))
    order = []
    while ready:
        q = ready.popleft()
        order.append(q)
        for r in d.delta[q].values():
            if r in useful:
                indegree[r] -= 1
                if indegree[r] == 0:
                    ready.append(r)
    return order if len(order) == len(useful) else None


def is_finite(d: Dfa) -> bool:
    return _topological_order(d, useful_states(d)) is not None


def is_empty(d) -> bool:
    if isinstance(d, Nfa):
        d = determinize(d)
    return d.initial not in coreachable_states(d)


def require_finite(d, what="language"):
    if not is_finite(d):
        raise InfiniteLanguageError(f"{what} is infinite")


def count_words(d: Dfa) -> int:
    """Number of words in a finite language, by path counting on the trim DAG."""
    useful = useful_states(d)
    order = _topological_order(d, useful)
    if order is None:
        raise InfiniteLanguageError("language is infinite")
    counts = {}
    for q in reversed(order):
        total = 1 if q in d.accepting else 0
        for r in d.delta[q].values():
            if r in useful:
                total += counts[r]
        counts[q] = total
    return counts.get(d.initial, 0)


def enumerate_words(d: Dfa) -> list:
    """All words of a finite language, sorted by length then lexicographically."""
    useful = useful_states(d)
    if _topological_order(d, useful) is None:
        raise InfiniteLanguageError("cannot enumerate an infinite language")
    words = []
    if d.initial not in useful:
        return words
    stack = [(d.initial, ())]
    while stack:
        q, prefix = stack.pop()
        if q in d.accepting:
            words.append(prefix)
        for a, r in d.delta[q].items():
            if r in useful:
                stack.append((r, prefix + (a,)))
    words.sort(key=word_key)
    return words


def accepts_only_epsilon(d: Dfa) -> bool:
    """True iff L(d) is exactly {ε}."""
    if d.initial not in d.accepting:
        return False
    useful = useful_states(d)
    return not any(r in useful for r in d.delta[d.initial].values())


# -- boolean operations and products ----------------------------------------


def product_intersect(a: Dfa, b: Dfa) -> Dfa:
    """Reachable part of the product automaton; accepts L(a) ∩ L(b)."""
    alphabet = _same_alphabet(a, b)
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        p, q = order[i]
        i += 1
        row = {}
        for sym in alphabet:
            p2 = a.delta[p].get(sym)
            q2 = b.delta[q].get(sym)
            if p2 is None or q2 is None:
                continue
            pair = (p2, q2)
            if pair not in index:
                index[pair] = len(order)
                order.append(pair)
            row[sym] = index[pair]
        delta.append(row)
    accepting = {index[pq] for pq in order if pq[0] in a.accepting and pq[1] in b.accepting}
    return Dfa(alphabet, tuple(delta), 0, frozenset(accepting))


def union(a, b) -> Nfa:
    """Disjoint union; state ``q`` of ``b`` becomes ``q + |Q_a|``."""
    a, b = as_nfa(a), as_nfa(b)
    alphabet = _same_alphabet(a, b)
    k = a.num_states
    delta = list(a.delta)
    for row in b.delta:
        delta.append({sym: frozenset(r + k for r in targets) for sym, targets in row.items()})
    return Nfa(
        alphabet,
        tuple(delta),
        a.initial | {q + k for q in b.initial},
        a.accepting | {q + k for q in b.accepting},
    )


def union_all(automata: Sequence) -> Nfa:
    automata = list(automata)
    result = as_nfa(automata[0])
    for other in automata[1:]:
        result = union(result, other)
    return result


def concat(a, b) -> Nfa:
    """NFA for L(a)·L(b), built without ε-transitions.

    Every transition of ``a`` into an accepting state gets a parallel copy
    into the initial states of ``b``.
    """
    a, b = as_nfa(a), as_nfa(b)
    alphabet = _same_alphabet(a, b)
    k = a.num_states
    b_initial = frozenset(q + k for q in b.initial)
    eps_in_a = bool(a.initial & a.accepting)
    eps_in_b = bool(b.initial & b.accepting)
    delta = []
    for row in a.delta:
        new_row = {}
        for sym, targets in row.items():
            new_row[sym] = targets | b_initial if targets & a.accepting else targets
        delta.append(new_row)
    for row in b.delta:
        delta.append({sym: frozenset(r + k for r in targets) for sym, targets in row.items()})
    initial = a.initial | b_initial if eps_in_a else a.initial
    accepting = frozenset(q + k for q in b.accepting)
    if eps_in_b:
        accepting |= a.accepting
    return Nfa(alphabet, tuple(delta), initial, accepting)


def concat_all(automata: Sequence) -> Nfa:
    automata = list(automata)
    result = as_nfa(automata[0])
    for other in automata[1:]:
        result = concat(result, other)
    return result


def determinize(n) -> Dfa:
    """Subset construction over reachable, non-empty subsets only."""
    n = as_nfa(n)
    start = frozenset(n.initial)
    if not start:
        return empty_dfa(n.alphabet)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        subset = order[i]
        i += 1
        row = {}
        for sym in n.alphabet:
            target = set()
            for q in subset:
                target.update(n.delta[q].get(sym, ()))
            if not target:
                continue
            target = frozenset(target)
            if target not in index:
                index[target] = len(order)
                order.append(target)
            row[sym] = index[target]
        delta.append(row)
    accepting = {index[s] for s in order if s & n.accepting}
    return Dfa(n.alphabet, tuple(delta), 0, frozenset(accepting))


def _canonical(alphabet, initial, succ, accepting):
    """Renumber states breadth-first from ``initial`` over the sorted alphabet."""
    index = {initial: 0}
    order = [initial]
    delta = []
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        row = {}
        for sym in alphabet:
            r = succ(q, sym)
            if r is None:
                continue
            if r not in index:
                index[r] = len(order)
                order.append(r)
            row[sym] = index[r]
        delta.append(row)
    return Dfa(alphabet, tuple(delta), 0, frozenset(index[q] for q in order if q in accepting))


def minimize(d: Dfa) -> Dfa:
    """Minimal trim partial DFA in canonical breadth-first numbering.

    Moore-style partition refinement; undefined transitions (and transitions
    to useless states) behave as an implicit dead class.
    """
    useful = useful_states(d)
    if d.initial not in useful:
        return empty_dfa(d.alphabet)
    states = sorted(useful)
    alphabet = d.alphabet
    cls = {q: int(q in d.accepting) for q in states}
    num_classes = len(set(cls.values()))
    while True:
        signatures = {}
        new_cls = {}
        for q in states:
            row = d.delta[q]
            sig = (cls[q],) + tuple(
                cls[row[a]] if a in row and row[a] in useful else -1 for a in alphabet
            )
            new_cls[q] = signatures.setdefault(sig, len(signatures))
        cls = new_cls
        if len(signatures) == num_classes:
            break
        num_classes = len(signatures)

    representative = {}
    for q in states:
        representative.setdefault(cls[q], q)

    def succ(c, sym):
        r = d.delta[representative[c]].get(sym)
        if r is None or r not in useful:
            return None
        return cls[r]

    accepting_classes = {cls[q] for q in states if q in d.accepting}
    return _canonical(alphabet, cls[d.initial], succ, accepting_classes)


def equivalent(a: Dfa, b: Dfa) -> Equivalence:
    """Decide L(a) = L(b); on failure report the shortlex-least distinguishing word.

    Breadth-first search over pairs of states with sorted symbols visits each
    pair first along its shortlex-least access word, so the first pair that
    disagrees on acceptance yields the least counterexample.
    """
    alphabet = _same_alphabet(a, b)
    live_a = coreachable_states(a)
    live_b = coreachable_states(b)

    def norm(q, live):
        return q if q is not None and q in live else None

    start = (norm(a.initial, live_a), norm(b.initial, live_b))
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if (p is not None and p in a.accepting) != (q is not None and q in b.accepting):
            word = []
            while parent[pair] is not None:
                pair, sym = parent[pair]
                word.append(sym)
            return Equivalence(False, tuple(reversed(word)))
        for sym in alphabet:
            p2 = norm(a.delta[p].get(sym), live_a) if p is not None else None
            q2 = norm(b.delta[q].get(sym), live_b) if q is not None else None
            nxt = (p2, q2)
            if nxt == (None, None) or nxt in parent:
                continue
            parent[nxt] = (pair, sym)
            queue.append(nxt)
    return Equivalence(True, None)


def language_equal(a: Dfa, b: Dfa) -> bool:
    return equivalent(a, b).equal
