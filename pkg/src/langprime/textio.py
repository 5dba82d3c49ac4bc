"""Line-based text formats: dfa-v1, nfa-v1, rel-v1, edge-v1, tilings, reports.

All formats are UTF-8, whitespace-tokenised, one directive per line, and
``#`` starts a comment line.  Printing is canonical so that
``parse(format(x)) == x``.
"""

from __future__ import annotations

from .automata import Dfa, Nfa
from .errors import ParseError


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped.split()


def _expect_header(lines, header):
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise ParseError(f"empty input, expected header {header!r}") from None
    if tokens != [header]:
        raise ParseError(f"expected header {header!r}, got {' '.join(tokens)!r}", lineno)


def _state_index(index, name, lineno):
    try:
        return index[name]
    except KeyError:
        raise ParseError(f"unknown state {name!r}", lineno) from None


# -- automata -----------------------------------------------------------------


def _parse_automaton(text, header):
    lines = _lines(text)
    _expect_header(lines, header)
    alphabet, names, initial, accepting, trans = [], [], [], [], []
    for lineno, tokens in lines:
        key, args = tokens[0], tokens[1:]
        if key == "alphabet":
            alphabet.extend(args)
        elif key == "states":
            names.extend(args)
        elif key == "initial":
            initial.extend((lineno, a) for a in args)
        elif key == "accepting":
            accepting.extend((lineno, a) for a in args)
        elif key == "trans":
            if len(args) != 3:
                raise ParseError("trans needs <state> <symbol> <state>", lineno)
            trans.append((lineno, *args))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if len(set(names)) != len(names):
        raise ParseError("duplicate state names")
    if len(set(alphabet)) != len(alphabet):
        raise ParseError("duplicate alphabet symbols")
    index = {name: i for i, name in enumerate(names)}
    sigma = set(alphabet)
    delta = [dict() for _ in names]
    for lineno, src, sym, dst in trans:
        if sym not in sigma:
            raise ParseError(f"symbol {sym!r} not in alphabet", lineno)
        q, r = _state_index(index, src, lineno), _state_index(index, dst, lineno)
        delta[q].setdefault(sym, []).append(r)
    return (
        alphabet,
        names,
        [_state_index(index, s, ln) for ln, s in initial],
        {_state_index(index, s, ln) for ln, s in accepting},
        delta,
    )


def parse_dfa(text: str) -> Dfa:
    alphabet, names, initial, accepting, delta = _parse_automaton(text, "dfa-v1")
    if len(initial) != 1:
        raise ParseError(f"dfa-v1 needs exactly one initial state, got {len(initial)}")
    rows = []
    for q, row in enumerate(delta):
        out = {}
        for sym, targets in row.items():
            if len(targets) != 1:
                raise ParseError(f"nondeterministic transition from {names[q]!r} on {sym!r}")
            out[sym] = targets[0]
        rows.append(out)
    try:
        return Dfa(alphabet, tuple(rows), initial[0], frozenset(accepting), tuple(names))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_nfa(text: str) -> Nfa:
    alphabet, names, initial, accepting, delta = _parse_automaton(text, "nfa-v1")
    rows = tuple({sym: frozenset(t) for sym, t in row.items()} for row in delta)
    try:
        return Nfa(alphabet, rows, frozenset(initial), frozenset(accepting), tuple(names))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _format_common(a, header, initial):
    names = a.names
    out = [
        header,
        " ".join(["alphabet", *a.alphabet]),
        " ".join(["states", *names]),
        " ".join(["initial", *(names[q] for q in sorted(initial))]),
        " ".join(["accepting", *(names[q] for q in sorted(a.accepting))]),
    ]
    return out


def format_dfa(d: Dfa) -> str:
    out = _format_common(d, "dfa-v1", [d.initial])
    for q, row in enumerate(d.delta):
        for sym in sorted(row):
            out.append(f"trans {d.names[q]} {sym} {d.names[row[sym]]}")
    return "\n".join(out) + "\n"


def format_nfa(n: Nfa) -> str:
    out = _format_common(n, "nfa-v1", n.initial)
    for q, row in enumerate(n.delta):
        for sym in sorted(row):
            for r in sorted(row[sym]):
                out.append(f"trans {n.names[q]} {sym} {n.names[r]}")
    return "\n".join(out) + "\n"


# -- words --------------------------------------------------------------------


def format_word(word) -> str:
    return " ".join(word)


def parse_word(text: str) -> tuple:
    return tuple(text.split())


# -- tiling instances -----------------------------------------------------------


def _parse_n(args, lineno):
    if len(args) != 1:
        raise ParseError("n needs one integer", lineno)
    try:
        return int(args[0])
    except ValueError:
        raise ParseError(f"n must be an integer, got {args[0]!r}", lineno) from None


def parse_rel(text: str):
    from .reductions import RelTilingInstance

    lines = _lines(text)
    _expect_header(lines, "rel-v1")
    tiles, h, v, n = [], set(), set(), None
    for lineno, tokens in lines:
        key, args = tokens[0], tokens[1:]
        if key == "tiles":
            tiles.extend(args)
        elif key == "n":
            n = _parse_n(args, lineno)
        elif key in ("H", "V"):
            if len(args) != 2:
                raise ParseError(f"{key} needs two tiles", lineno)
            (h if key == "H" else v).add(tuple(args))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if n is None:
        raise ParseError("missing n")
    try:
        return RelTilingInstance(tuple(tiles), frozenset(h), frozenset(v), n)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_rel(r) -> str:
    out = ["rel-v1", " ".join(["tiles", *r.tiles]), f"n {r.n}"]
    out += [f"H {a} {b}" for a, b in sorted(r.horizontal)]
    out += [f"V {a} {b}" for a, b in sorted(r.vertical)]
    return "\n".join(out) + "\n"


def parse_edge(text: str):
    from .reductions import EdgeTilingInstance

    lines = _lines(text)
    _expect_header(lines, "edge-v1")
    colors, tiles, n = [], {}, None
    for lineno, tokens in lines:
        key, args = tokens[0], tokens[1:]
        if key == "colors":
            colors.extend(args)
        elif key == "n":
            n = _parse_n(args, lineno)
        elif key == "tile":
            if len(args) != 5:
                raise ParseError("tile needs <name> <top> <right> <bottom> <left>", lineno)
            if args[0] in tiles:
                raise ParseError(f"duplicate tile {args[0]!r}", lineno)
            tiles[args[0]] = tuple(args[1:])
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if n is None:
        raise ParseError("missing n")
    try:
        return EdgeTilingInstance(tuple(colors), tiles, n)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_edge(e) -> str:
    out = ["edge-v1", " ".join(["colors", *e.colors]), f"n {e.n}"]
    for name in sorted(e.tiles):
        out.append(" ".join(["tile", name, *e.tiles[name]]))
    return "\n".join(out) + "\n"


def format_tiling(cells) -> str:
    return " ".join(["tiling", *cells]) + "\n"


def parse_tiling(text: str) -> tuple:
    found = [tokens for _, tokens in _lines(text)]
    if len(found) != 1 or found[0][0] != "tiling":
        raise ParseError("expected a single 'tiling <t1> ... <tk>' line")
    return tuple(found[0][1:])


# -- decomposition reports and verdicts ----------------------------------------


def format_report(report) -> str:
    out = [f"verdict {report.verdict}"]
    out.append(f"stats examined {report.examined} pruned {report.pruned}")
    for w in report.witnesses:
        states = [] if w.partition is None else [str(q) for q in sorted(w.partition)]
        out.append(" ".join(["witness", *states]))
        out.append("left:")
        out.append(format_dfa(w.left).rstrip("\n"))
        out.append("right:")
        out.append(format_dfa(w.right).rstrip("\n"))
    return "\n".join(out) + "\n"


def parse_report(text: str):
    from .decomposition import DecompositionReport, Witness

    raw = [ln for ln in text.splitlines() if ln.strip()]
    if not raw or not raw[0].startswith("verdict "):
        raise ParseError("report must start with a verdict line", 1)
    verdict = raw[0].split()[1]
    examined = pruned = 0
    i = 1
    if i < len(raw) and raw[i].startswith("stats "):
        tokens = raw[i].split()
        examined, pruned = int(tokens[2]), int(tokens[4])
        i += 1
    witnesses = []
    while i < len(raw):
        tokens = raw[i].split()
        if tokens[0] != "witness":
            raise ParseError(f"expected witness line, got {raw[i]!r}", i + 1)
        partition = frozenset(int(t) for t in tokens[1:]) if len(tokens) > 1 else None
        i += 1
        blocks = {}
        for label in ("left:", "right:"):
            if i >= len(raw) or raw[i].strip() != label:
                raise ParseError(f"expected {label!r}", i + 1)
            i += 1
            start = i
            while i < len(raw) and raw[i].split()[0] not in ("right:", "witness"):
                i += 1
            blocks[label] = parse_dfa("\n".join(raw[start:i]))
        witnesses.append(Witness(partition, blocks["left:"], blocks["right:"]))
    return DecompositionReport(verdict, tuple(witnesses), examined, pruned)


def format_concat_verdict(verdict) -> str:
    if verdict.equal:
        return "equal\n"
    return " ".join(["unequal", verdict.direction, *verdict.counterexample]) + "\n"
