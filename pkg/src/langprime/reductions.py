"""Reduction chain from square tiling to primality of finite languages.

    edge tiling -> relational tiling -> (L, L1, L2) -> language A

A relational instance has a legal tiling iff L != L1·L2, and A is
decomposable iff L = L1·L2; so the composed map sends instances with a
tiling to prime languages.  A backtracking solver serves as the independent
oracle for small instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import automata as fa
from .automata import Dfa
from .concat_eq import concat_equiv
from .errors import (
    AlphabetMismatchError,
    DegenerateInstanceError,
    LimitExceededError,
    SymbolError,
)

DOLLAR = "$"


# -- tiling instances ---------------------------------------------------------


@dataclass(frozen=True)
class EdgeTilingInstance:
    """Colours, named tiles ``name -> (top, right, bottom, left)`` and grid size ``n``."""

    colors: tuple
    tiles: dict
    n: int

    def __post_init__(self):
        colors = tuple(self.colors)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "tiles", {k: tuple(v) for k, v in dict(self.tiles).items()})
        if len(set(colors)) != len(colors):
            raise ValueError("duplicate colours")
        for c in colors:
            fa.check_symbol(c)
        for name, edges in self.tiles.items():
            fa.check_symbol(name)
            if len(edges) != 4 or not set(edges) <= set(colors):
                raise ValueError(f"tile {name!r} needs four edges drawn from the colours")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.n > len(colors):
            raise ValueError("n must not exceed the number of colours")

    __hash__ = None


@dataclass(frozen=True)
class RelTilingInstance:
    """Tiles with horizontal/vertical adjacency relations and grid size ``n``."""

    tiles: tuple
    horizontal: frozenset = field(default_factory=frozenset)
    vertical: frozenset = field(default_factory=frozenset)
    n: int = 1

    def __post_init__(self):
        tiles = tuple(sorted(set(self.tiles)))
        if len(tiles) != len(tuple(self.tiles)):
            raise ValueError("duplicate tiles")
        for t in tiles:
            fa.check_symbol(t)
        object.__setattr__(self, "tiles", tiles)
        for attr in ("horizontal", "vertical"):
            pairs = frozenset(tuple(p) for p in getattr(self, attr))
            if not all(len(p) == 2 and set(p) <= set(tiles) for p in pairs):
                raise ValueError(f"{attr} relation must be a set of tile pairs")
            object.__setattr__(self, attr, pairs)
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")


def edge_to_rel(e: EdgeTilingInstance) -> RelTilingInstance:
    """Horizontal pairs match right to left colour, vertical pairs bottom to top."""
    names = sorted(e.tiles)
    h = {(a, b) for a in names for b in names if e.tiles[a][1] == e.tiles[b][3]}
    v = {(a, b) for a in names for b in names if e.tiles[a][2] == e.tiles[b][0]}
    return RelTilingInstance(tuple(names), frozenset(h), frozenset(v), e.n)


def verify_tiling(r: RelTilingInstance, cells) -> bool:
    cells = tuple(cells)
    n = r.n
    if len(cells) != n * n:
        raise ValueError(f"a tiling needs {n * n} cells, got {len(cells)}")
    foreign = set(cells) - set(r.tiles)
    if foreign:
        raise ValueError(f"unknown tiles {sorted(foreign)}")
    for k, t in enumerate(cells):
        if k % n and (cells[k - 1], t) not in r.horizontal:
            return False
        if k >= n and (cells[k - n], t) not in r.vertical:
            return False
    return True


def solve_tiling(r: RelTilingInstance, max_n=4, max_tiles=4):
    """Lexicographically least legal tiling (row-major), or None.

    Plain backtracking; refuses instances beyond the configured limits.
    """
    n = r.n
    if n > max_n or len(r.tiles) > max_tiles:
        raise LimitExceededError(
            f"instance with n={n}, {len(r.tiles)} tiles exceeds n<={max_n}, tiles<={max_tiles}"
        )
    cells = []

    def place(k):
        if k == n * n:
            return True
        for t in r.tiles:
            if k % n and (cells[k - 1], t) not in r.horizontal:
                continue
            if k >= n and (cells[k - n], t) not in r.vertical:
                continue
            cells.append(t)
            if place(k + 1):
                return True
            cells.pop()
        return False

    return tuple(cells) if place(0) else None


# -- tiling -> concatenation equivalence -------------------------------------------


def numbered(tile, index):
    return f"{tile}@{index}"


def gadget_alphabet(r: RelTilingInstance):
    return [numbered(t, m) for t in r.tiles for m in range(1, r.n * r.n + 1)]


class _Builder:
    def __init__(self, alphabet):
        self.alphabet = alphabet
        self.index = {}
        self.delta = []

    def state(self, name):
        if name not in self.index:
            self.index[name] = len(self.delta)
            self.delta.append({})
        return self.index[name]

    def edge(self, src, symbol, dst):
        row = self.delta[self.index[src]]
        target = self.index[dst]
        assert row.get(symbol, target) == target, "builder produced a nondeterministic edge"
        row[symbol] = target

    def build(self, initial, accepting):
        names = [None] * len(self.delta)
        for name, q in self.index.items():
            names[q] = name
        return Dfa(
            self.alphabet,
            tuple(self.delta),
            self.index[initial],
            frozenset(self.index[a] for a in accepting),
            tuple(names),
        )


def prefix_chain(r: RelTilingInstance) -> Dfa:
    """Properly numbered prefixes ``(t1,1)...(tm,m)`` with ``m <= n²-2``; n²-1 states."""
    last = r.n * r.n - 2
    b = _Builder(gadget_alphabet(r))
    for i in range(last + 1):
        b.state(f"c{i}")
    for i in range(last):
        for t in r.tiles:
            b.edge(f"c{i}", numbered(t, i + 1), f"c{i + 1}")
    return b.build("c0", [f"c{i}" for i in range(last + 1)])


def horizontal_violations(r: RelTilingInstance) -> Dfa:
    """Numbered suffixes ``(t_m,m)...(t_N,N)`` whose first pair is not in H.

    States: a start state, one state per (tile, column-internal index) and a
    counter ``h{i}`` for ``i`` in ``[2, N]``: 1 + |Θ|(n²-n) + n²-1 in total.
    """
    n, N = r.n, r.n * r.n
    b = _Builder(gadget_alphabet(r))
    b.state("sH")
    starts = [m for m in range(1, N + 1) if m % n]
    for t in r.tiles:
        for m in starts:
            b.state(f"h:{t}:{m}")
    for i in range(2, N + 1):
        b.state(f"h{i}")
    for t in r.tiles:
        for m in starts:
            if m < N:
                b.edge("sH", numbered(t, m), f"h:{t}:{m}")
                for t2 in r.tiles:
                    if (t, t2) not in r.horizontal:
                        b.edge(f"h:{t}:{m}", numbered(t2, m + 1), f"h{m + 1}")
    for m in range(2, N):
        for t in r.tiles:
            b.edge(f"h{m}", numbered(t, m + 1), f"h{m + 1}")
    return b.build("sH", [f"h{N}"])


def vertical_violations(r: RelTilingInstance) -> Dfa:
    """Numbered suffixes whose first tile is not V-related to the tile n places later.

    ``v:t:m:o`` remembers the first tile ``t`` at index ``m`` and the offset
    ``o`` read since; 1 + |Θ|(n²-n)n + n²-n states in total.
    """
    n, N = r.n, r.n * r.n
    b = _Builder(gadget_alphabet(r))
    b.state("sV")
    for t in r.tiles:
        for m in range(1, N - n + 1):
            for o in range(n):
                b.state(f"v:{t}:{m}:{o}")
    for i in range(n + 1, N + 1):
        b.state(f"v{i}")
    for t in r.tiles:
        for m in range(1, N - n + 1):
            b.edge("sV", numbered(t, m), f"v:{t}:{m}:0")
            for o in range(n - 1):
                for t2 in r.tiles:
                    b.edge(f"v:{t}:{m}:{o}", numbered(t2, m + o + 1), f"v:{t}:{m}:{o + 1}")
            for t2 in r.tiles:
                if (t, t2) not in r.vertical:
                    b.edge(f"v:{t}:{m}:{n - 1}", numbered(t2, m + n), f"v{m + n}")
    for m in range(n + 1, N):
        for t in r.tiles:
            b.edge(f"v{m}", numbered(t, m + 1), f"v{m + 1}")
    return b.build("sV", [f"v{N}"])


@dataclass(frozen=True)
class ConcatGadget:
    full: Dfa  # L
    left: Dfa  # L1
    right: Dfa  # L2
    horizontal: Dfa
    vertical: Dfa


def _full_automaton(r: RelTilingInstance, right: Dfa) -> Dfa:
    """DFA for L1·L2 ∪ {properly numbered words of length n²}.

    Counter states 0..N follow a proper numbering; a numbering leap after a
    prefix that is still a word of L1 (length <= N-2) continues in the DFA
    for L2 as if it had just left its start state.  Longer prefixes may not
    leap, since they cannot be split as L1·L2.
    """
    N = r.n * r.n
    s2 = right.initial
    for row in right.delta:
        assert s2 not in row.values(), "start state of L2 automaton must have no incoming edges"
    b = _Builder(right.alphabet)
    for q in range(N + 1):
        b.state(f"k{q}")
    rest = [p for p in range(right.num_states) if p != s2]
    for p in rest:
        b.state(f"r{p}")
    for q in range(N + 1):
        for t in r.tiles:
            for m in range(1, N + 1):
                sym = numbered(t, m)
                if m == q + 1:
                    b.edge(f"k{q}", sym, f"k{q + 1}")
                elif q <= N - 2:
                    target = right.delta[s2].get(sym)
                    if target is not None:
                        b.edge(f"k{q}", sym, f"r{target}")
    for p in rest:
        for sym, target in right.delta[p].items():
            b.edge(f"r{p}", sym, f"r{target}")
    accepting = [f"k{N}"] + [f"r{p}" for p in rest if p in right.accepting]
    return b.build("k0", accepting)


def build_concat_gadget(r: RelTilingInstance) -> ConcatGadget:
    if not r.tiles:
        raise ValueError("the gadget needs at least one tile")
    if r.n < 2:
        raise DegenerateInstanceError(
            "n must be at least 2 for the gadget; with n = 1 a tiling exists iff there is a tile",
            answer=bool(r.tiles),
        )
    mh = horizontal_violations(r)
    mv = vertical_violations(r)
    right = fa.determinize(fa.union(mh, mv))
    return ConcatGadget(_full_automaton(r, right), prefix_chain(r), right, mh, mv)


def rel_to_concat(r: RelTilingInstance):
    """Return DFAs ``(L, L1, L2)`` with L = L1·L2 iff ``r`` has no legal tiling."""
    g = build_concat_gadget(r)
    return g.full, g.left, g.right


# -- concatenation equivalence -> primality ------------------------------------------


def prime_symbol(a):
    return a + "'"


def _primed_alphabet(sigma):
    if DOLLAR in sigma:
        raise SymbolError(f"alphabet already contains {DOLLAR!r}")
    primed = {prime_symbol(a) for a in sigma}
    if primed & set(sigma):
        raise SymbolError("primed copies of the alphabet collide with existing symbols")
    return sorted(set(sigma) | primed | {DOLLAR})


def _prime(d, gamma):
    mapping = {a: prime_symbol(a) for a in d.alphabet}
    return fa.extend_alphabet(fa.rename_symbols(d, mapping), gamma)


def primality_factors(left: Dfa, right: Dfa):
    """DFAs for A1 = L1 ∪ L1'$ and A2 = L2 ∪ $L2', the only candidate factors of A."""
    gamma = _primed_alphabet(left.alphabet)
    dollar = fa.from_words([(DOLLAR,)], gamma)
    l1, l2 = fa.extend_alphabet(left, gamma), fa.extend_alphabet(right, gamma)
    a1 = fa.union(l1, fa.concat(_prime(left, gamma), dollar))
    a2 = fa.union(l2, fa.concat(dollar, _prime(right, gamma)))
    return fa.determinize(a1), fa.determinize(a2)


def concat_to_primality(lang: Dfa, left: Dfa, right: Dfa) -> Dfa:
    """DFA for A = L ∪ L1$L2' ∪ L1'$L2 ∪ L1'$$L2' over Σ ∪ Σ' ∪ {$}.

    A is decomposable iff L = L1·L2.  Degenerate inputs (L empty or {ε}, or an
    empty factor) raise :class:`DegenerateInstanceError` carrying the direct
    answer to "L = L1·L2?".
    """
    if not (lang.alphabet == left.alphabet == right.alphabet):
        raise AlphabetMismatchError("all three automata must share one alphabet")
    for d in (lang, left, right):
        fa.require_finite(d)
    if (
        fa.is_empty(lang)
        or fa.accepts_only_epsilon(lang)
        or fa.is_empty(left)
        or fa.is_empty(right)
    ):
        answer = concat_equiv(lang, left, right).equal
        raise DegenerateInstanceError(
            "degenerate instance (L is empty or {ε}, or a factor is empty); "
            f"decide directly: L = L1·L2 is {answer}",
            answer=answer,
        )
    gamma = _primed_alphabet(lang.alphabet)
    dollar = fa.from_words([(DOLLAR,)], gamma)
    two_dollars = fa.from_words([(DOLLAR, DOLLAR)], gamma)
    l, l1, l2 = (fa.extend_alphabet(d, gamma) for d in (lang, left, right))
    l1p, l2p = _prime(left, gamma), _prime(right, gamma)
    parts = [
        l,
        fa.concat_all([l1, dollar, l2p]),
        fa.concat_all([l1p, dollar, l2]),
        fa.concat_all([l1p, two_dollars, l2p]),
    ]
    return fa.determinize(fa.union_all(parts))


def hardness_pipeline(e: EdgeTilingInstance) -> Dfa:
    """Edge tiling instance -> finite-language DFA that is prime iff a tiling exists.

    Degenerate instances raise :class:`DegenerateInstanceError` whose
    ``answer`` says whether a tiling exists.
    """
    r = edge_to_rel(e)
    lang, left, right = rel_to_concat(r)
    try:
        return concat_to_primality(lang, left, right)
    except DegenerateInstanceError as exc:
        # a tiling exists iff L != L1·L2
        raise DegenerateInstanceError(
            f"degenerate gadget: a tiling {'exists' if not exc.answer else 'does not exist'}",
            answer=not exc.answer,
        ) from exc
