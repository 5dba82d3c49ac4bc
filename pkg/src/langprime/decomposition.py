"""Primality of finite languages via partition sets.

For a DFA ``M = (Q, Σ, δ, s, F)`` and a set of states ``P`` the two factor
languages are

* left:  words whose run ends in ``P``;
* right: words accepted from *every* state of ``P``.

Their product is always contained in ``L(M)``, and every decomposition of
``L(M)`` is dominated by one of this form, so a finite language is
decomposable iff some non-empty ``P`` yields ``L = left·right`` with neither
factor equal to ``{ε}``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import automata as fa
from .automata import Dfa
from .errors import InfiniteLanguageError, NotInLanguageError, PartitionSetError

PRIME = "prime"
DECOMPOSABLE = "decomposable"

READINGS = ("plus", "star")
STRATEGIES = ("closed", "subsets")


@dataclass(frozen=True)
class Witness:
    """One decomposition ``L = left·right``.

    ``partition`` holds state indices of the minimal DFA the search ran on;
    it is None only for the empty language, which is split as ∅·∅ before
    any search happens.
    """

    partition: frozenset | None
    left: Dfa
    right: Dfa


@dataclass(frozen=True)
class DecompositionReport:
    verdict: str
    witnesses: tuple = ()
    examined: int = 0
    pruned: int = 0
    automaton: Dfa | None = None

    def __post_init__(self):
        if self.verdict not in (PRIME, DECOMPOSABLE):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if (self.verdict == DECOMPOSABLE) != bool(self.witnesses):
            raise ValueError("decomposable verdict needs witnesses and vice versa")

    @property
    def is_prime(self):
        return self.verdict == PRIME

    def __eq__(self, other):
        # the minimal automaton is derived data, leave it out of equality
        if not isinstance(other, DecompositionReport):
            return NotImplemented
        return (self.verdict, self.witnesses, self.examined, self.pruned) == (
            other.verdict,
            other.witnesses,
            other.examined,
            other.pruned,
        )

    __hash__ = None


def _partition(d, partition, allow_empty=False):
    states = frozenset(partition)
    if not states and not allow_empty:
        raise PartitionSetError("partition set must be non-empty")
    bad = [q for q in states if not (isinstance(q, int) and 0 <= q < d.num_states)]
    if bad:
        raise PartitionSetError(f"not states of the automaton: {sorted(bad)}")
    return states


def run_from(d: Dfa, q, word):
    for a in word:
        q = d.delta[q].get(a)
        if q is None:
            return None
    return q


def left_language(d: Dfa, partition) -> Dfa:
    """Automaton for the words whose run from the initial state ends in ``partition``."""
    return fa.with_accepting(d, _partition(d, partition, allow_empty=True))


def right_language(d: Dfa, partition) -> Dfa:
    """Automaton for the words accepted from every state in ``partition``."""
    states = sorted(_partition(d, partition))
    result = fa.with_initial(d, states[0])
    for p in states[1:]:
        result = fa.product_intersect(result, fa.with_initial(d, p))
    return result


def check_split_relation(d: Dfa, partition, word) -> bool:
    """Decide whether ``word`` (a member of L(d)) lies in left·right for ``partition``.

    Simulates ``d`` once, remembering the suffix after every prefix that ends
    in the partition set, then tests each remembered suffix from every
    partition state: O(|Q| + |Q|²) for words of length below |Q|.
    """
    P = _partition(d, partition)
    word = tuple(word)
    if not d.accepts(word):
        raise NotInLanguageError(f"word {' '.join(word)!r} is not in the language")
    cuts = []
    q = d.initial
    # the empty prefix counts as a split point as well
    if q in P:
        cuts.append(0)
    for i, a in enumerate(word, 1):
        q = d.delta[q][a]
        if q in P:
            cuts.append(i)
    if not cuts:
        return False
    # Membership of a suffix in the right factor requires acceptance from all
    # of P, not only from the partition states visited along this word.
    for i in cuts:
        suffix = word[i:]
        if all(run_from(d, p, suffix) in d.accepting for p in P):
            return True
    return False


def check_partition_decomposition(d: Dfa, partition, method="auto") -> bool:
    """True iff ``partition`` induces a non-trivial decomposition of L(d).

    ``method`` is ``"automaton"`` (subset construction of left·right, then an
    equivalence test), ``"words"`` (split relation on every word of L), or
    ``"auto"``, which takes the word route when L has fewer words than d has
    states.
    """
    P = _partition(d, partition)
    left = left_language(d, P)
    right = right_language(d, P)
    if fa.accepts_only_epsilon(left) or fa.accepts_only_epsilon(right):
        return False
    if method == "auto":
        method = "words" if fa.is_finite(d) and fa.count_words(d) < d.num_states else "automaton"
    if method == "words":
        return all(check_split_relation(d, P, w) for w in fa.enumerate_words(d))
    if method != "automaton":
        raise ValueError(f"unknown method {method!r}")
    product = fa.determinize(fa.concat(left, right))
    equal, counterexample = fa.equivalent(d, product)
    if not equal:
        # left·right ⊆ L always holds, so any difference is a word of L missing from the product
        assert d.accepts(counterexample) and not product.accepts(counterexample)
    return equal


def candidate_states(d: Dfa, reading="plus") -> frozenset:
    """States allowed in a partition set by the branching/accepting filter.

    A state qualifies if it has more than one outgoing symbol, or it is
    accepting and some word leads from it to an accepting state.  With
    ``reading="plus"`` that word must be non-empty; ``"star"`` also admits
    the empty word, which reduces the second condition to "accepting".

    The filter is not sound for pruning: the chain DFA for ``{abc}`` has no
    qualifying state although ``{abc} = {a}·{bc}``.  Searches therefore do
    not prune unless asked to.
    """
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    live = fa.coreachable_states(d)
    out = set()
    for p, row in enumerate(d.delta):
        if len(row) > 1:
            out.add(p)
        elif p in d.accepting:
            if reading == "star" or any(r in live for r in row.values()):
                out.add(p)
    return frozenset(out)


class _RightLanguages:
    """Hash-consed right languages of an acyclic trim DFA.

    Each finite language is interned as a node ``(accepting, children)``;
    equal languages get equal ids, so intersection results can be compared
    by id.  ``TOP`` stands for the intersection over an empty family.
    """

    TOP = -1

    def __init__(self, d: Dfa):
        self._table = {}
        self._nodes = []
        self._memo = {}
        self.empty = self._intern(False, ())
        self.epsilon = self._intern(True, ())
        order = fa._topological_order(d, fa.useful_states(d))
        if order is None:
            raise InfiniteLanguageError("right languages of an infinite language")
        self.state_node = {}
        for q in reversed(order):
            children = tuple(
                (a, self.state_node[r]) for a, r in sorted(d.delta[q].items()) if r in self.state_node
            )
            self.state_node[q] = self._intern(q in d.accepting, children)

    def _intern(self, final, children):
        key = (final, children)
        node = self._table.get(key)
        if node is None:
            node = len(self._nodes)
            self._table[key] = node
            self._nodes.append((final, dict(children)))
        return node

    def intersect(self, x, y):
        if x == self.TOP:
            return y
        if y == self.TOP or x == y:
            return x
        if x == self.empty or y == self.empty:
            return self.empty
        key = (x, y) if x < y else (y, x)
        found = self._memo.get(key)
        if found is not None:
            return found
        fx, cx = self._nodes[x]
        fy, cy = self._nodes[y]
        children = []
        for a in sorted(cx.keys() & cy.keys()):
            c = self.intersect(cx[a], cy[a])
            if c != self.empty:
                children.append((a, c))
        node = self._intern(fx and fy, tuple(children))
        self._memo[key] = node
        return node

    def common(self, states):
        node = self.TOP
        for q in states:
            node = self.intersect(node, self.state_node[q])
        return node

    def includes(self, small, big):
        return self.intersect(small, big) == small

    def trivial(self, node):
        """Right factor is ∅ or {ε}: no superset of the partition set can help."""
        return node in (self.empty, self.epsilon)


def _closed_sets(pool, langs):
    """All sets ``{q ∈ pool : ⋂_{p∈X} R(p) ⊆ R(q)}`` via Ganter's NextClosure."""
    position = {q: i for i, q in enumerate(pool)}

    def closure(xs):
        w = langs.common(xs)
        if w == langs.TOP:
            return frozenset()
        return frozenset(q for q in pool if langs.includes(w, langs.state_node[q]))

    current = closure(())
    found = [current]
    while len(current) < len(pool):
        for i in reversed(range(len(pool))):
            x = pool[i]
            if x in current:
                current = current - {x}
                continue
            candidate = closure(current | {x})
            if all(position[y] >= i for y in candidate - current):
                current = candidate
                break
        else:  # pragma: no cover - NextClosure always terminates at the full pool
            break
        found.append(current)
    return found


def _canonical_key(states):
    return (len(states), tuple(sorted(states)))


def _candidates_closed(pool, langs):
    sets = [s for s in _closed_sets(pool, langs) if s and not langs.trivial(langs.common(s))]
    sets.sort(key=_canonical_key)
    return sets


def _candidates_subsets(pool, langs):
    """Subsets of ``pool`` in canonical order, skipping the upward cone of any
    set whose right factor is already ∅ or {ε}."""
    level = []
    for q in pool:
        w = langs.state_node[q]
        if not langs.trivial(w):
            level.append(((q,), w))
    while level:
        for states, _ in level:
            yield frozenset(states)
        survivors = {states for states, _ in level}
        nxt = []
        for states, w in level:
            for q in pool:
                if q <= states[-1]:
                    continue
                grown = states + (q,)
                if any(grown[:i] + grown[i + 1:] not in survivors for i in range(len(grown) - 1)):
                    continue
                w2 = langs.intersect(w, langs.state_node[q])
                if not langs.trivial(w2):
                    nxt.append((grown, w2))
        level = nxt


def _check_chunk(d, chunk, exhaustive, method):
    hits = []
    examined = 0
    for P in chunk:
        examined += 1
        if check_partition_decomposition(d, P, method):
            hits.append(P)
            if not exhaustive:
                break
    return hits, examined


def _witness(d, P):
    return Witness(
        frozenset(P),
        fa.minimize(left_language(d, P)),
        fa.minimize(right_language(d, P)),
    )


def is_prime(
    d: Dfa,
    prune=False,
    exhaustive=False,
    jobs=1,
    reading="plus",
    strategy="closed",
    method="auto",
) -> DecompositionReport:
    """Decide primality of the finite language L(d).

    The DFA is minimised first; partition sets are drawn from all states, or
    from :func:`candidate_states` when ``prune`` is set, and tried in order
    of size, then lexicographically.

    ``strategy="closed"`` only tries sets that are closed under "every state
    whose right language contains the common right language of the set".
    Closing a witness keeps the right factor and enlarges the left one, so it
    stays a witness and the verdict is unchanged; ``"subsets"`` tries every
    subset instead (needed to list all witnesses literally).

    The empty language is reported decomposable (∅ = ∅·∅) and {ε} prime.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}")
    if not fa.is_finite(d):
        raise InfiniteLanguageError("primality is only decided for finite languages")
    m = fa.minimize(d)
    total = 2 ** m.num_states - 1
    if m.initial not in m.accepting and not m.delta[m.initial]:
        empty = fa.empty_dfa(m.alphabet)
        return DecompositionReport(DECOMPOSABLE, (Witness(None, empty, empty),), 0, total, m)

    langs = _RightLanguages(m)
    pool = sorted(candidate_states(m, reading)) if prune else list(range(m.num_states))
    if strategy == "closed":
        candidates = _candidates_closed(pool, langs)
    else:
        candidates = _candidates_subsets(pool, langs)

    candidates = list(candidates)
    hits = []
    if jobs > 1 and len(candidates) > 1:
        size = -(-len(candidates) // jobs)
        chunks = [candidates[i:i + size] for i in range(0, len(candidates), size)]
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(
                executor.map(
                    _check_chunk,
                    itertools.repeat(m),
                    chunks,
                    itertools.repeat(exhaustive),
                    itertools.repeat(method),
                )
            )
        for chunk_hits, _ in results:
            hits.extend(chunk_hits)
        # chunks are contiguous ranges of the canonical order; report what a
        # sequential search would have examined so output ignores the job count
        hits.sort(key=_canonical_key)
        if exhaustive or not hits:
            examined = len(candidates)
        else:
            hits = hits[:1]
            examined = candidates.index(hits[0]) + 1
    else:
        hits, examined = _check_chunk(m, candidates, exhaustive, method)

    witnesses = tuple(_witness(m, P) for P in hits)
    verdict = DECOMPOSABLE if witnesses else PRIME
    return DecompositionReport(verdict, witnesses, examined, total - len(candidates), m)


def factors_multiply_back(d: Dfa, witness: Witness) -> bool:
    """Check a reported witness: left·right must be language-equal to L(d)."""
    product = fa.determinize(fa.concat(witness.left, witness.right))
    return fa.language_equal(fa.minimize(d), fa.minimize(product))

