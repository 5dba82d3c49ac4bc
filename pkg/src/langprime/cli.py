"""Command-line interface.

Exit codes: 0 for a positive answer (prime, equal, tiling found, true),
1 for a negative one, 2 for any error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import automata as fa
from . import reductions as red
from .concat_eq import concat_equiv
from .decomposition import READINGS, STRATEGIES, is_prime
from .errors import DegenerateInstanceError, LangPrimeError
from .textio import (
    format_concat_verdict,
    format_dfa,
    format_rel,
    format_report,
    format_tiling,
    format_word,
    parse_dfa,
    parse_edge,
    parse_rel,
    parse_tiling,
)

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _read(path):
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_dfa(path):
    return parse_dfa(_read(path))


def _write_files(out_dir, files):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_text(text, encoding="utf-8")
        print(f"wrote {out / name}")


def cmd_check_prime(args, out):
    d = _load_dfa(args.file)
    report = is_prime(
        d,
        prune=args.prune == "on",
        exhaustive=args.exhaustive,
        jobs=args.jobs,
        reading=args.reading,
        strategy=args.strategy,
    )
    out.write(format_report(report))
    return EXIT_YES if report.is_prime else EXIT_NO


def cmd_concat_eq(args, out):
    verdict = concat_equiv(_load_dfa(args.lang), _load_dfa(args.left), _load_dfa(args.right))
    out.write(format_concat_verdict(verdict))
    return EXIT_YES if verdict.equal else EXIT_NO


def _concat_files(lang, left, right):
    return {"L.dfa": format_dfa(lang), "L1.dfa": format_dfa(left), "L2.dfa": format_dfa(right)}


def cmd_gadget(args, out):
    inputs = args.inputs
    expected = {"edge-to-rel": 1, "rel-to-concat": 1, "concat-to-prime": 3, "full-chain": 1}
    if len(inputs) != expected[args.kind]:
        raise LangPrimeError(f"{args.kind} takes {expected[args.kind]} input file(s)")
    files = {}
    try:
        if args.kind == "edge-to-rel":
            r = red.edge_to_rel(parse_edge(_read(inputs[0])))
            out.write(f"tiles {len(r.tiles)} H {len(r.horizontal)} V {len(r.vertical)}\n")
            files["rel.txt"] = format_rel(r)
        elif args.kind in ("rel-to-concat", "full-chain"):
            if args.kind == "full-chain":
                r = red.edge_to_rel(parse_edge(_read(inputs[0])))
                files["rel.txt"] = format_rel(r)
            else:
                r = parse_rel(_read(inputs[0]))
            g = red.build_concat_gadget(r)
            out.write(f"states M_H {g.horizontal.num_states}\n")
            out.write(f"states M_V {g.vertical.num_states}\n")
            out.write(f"states L1 {g.left.num_states}\n")
            out.write(f"states L2 {g.right.num_states}\n")
            out.write(f"states L {g.full.num_states}\n")
            files.update(_concat_files(g.full, g.left, g.right))
            if args.kind == "full-chain":
                a = red.concat_to_primality(g.full, g.left, g.right)
                out.write(f"states A {a.num_states}\n")
                files["A.dfa"] = format_dfa(a)
        else:
            lang, left, right = (_load_dfa(p) for p in inputs)
            a = red.concat_to_primality(lang, left, right)
            out.write(f"states A {a.num_states}\n")
            files["A.dfa"] = format_dfa(a)
    except DegenerateInstanceError as exc:
        if args.kind == "concat-to-prime":
            print(f"direct answer: {'equal' if exc.answer else 'unequal'}", file=sys.stderr)
        else:
            print(f"direct answer: tiling {'exists' if exc.answer else 'none'}", file=sys.stderr)
        raise
    _write_files(args.out_dir, files)
    return EXIT_YES


def cmd_tiling(args, out):
    r = parse_rel(_read(args.rel))
    if args.action == "solve":
        cells = red.solve_tiling(r, max_n=args.max_n, max_tiles=args.max_tiles)
        out.write("none\n" if cells is None else format_tiling(cells))
        return EXIT_NO if cells is None else EXIT_YES
    if args.tiling is None:
        raise LangPrimeError("verify needs a tiling file")
    ok = red.verify_tiling(r, parse_tiling(_read(args.tiling)))
    out.write("true\n" if ok else "false\n")
    return EXIT_YES if ok else EXIT_NO


def cmd_dfa(args, out):
    arity = {"minimize": 1, "enumerate": 1, "stats": 1, "equiv": 2, "product": 2, "concat": 2}
    if len(args.files) != arity[args.op]:
        raise LangPrimeError(f"dfa {args.op} takes {arity[args.op]} file(s)")
    ds = [_load_dfa(p) for p in args.files]
    if args.op == "minimize":
        out.write(format_dfa(fa.minimize(ds[0])))
    elif args.op == "product":
        out.write(format_dfa(fa.product_intersect(*ds)))
    elif args.op == "concat":
        out.write(format_dfa(fa.determinize(fa.concat(*ds))))
    elif args.op == "enumerate":
        for w in fa.enumerate_words(ds[0]):
            out.write(format_word(w) + "\n")
    elif args.op == "stats":
        d = ds[0]
        words = fa.count_words(d) if fa.is_finite(d) else "infinite"
        out.write(f"states {d.num_states}\ntransitions {d.num_transitions}\nwords {words}\n")
    else:
        equal, word = fa.equivalent(*ds)
        out.write("true\n" if equal else " ".join(["false", *word]) + "\n")
        return EXIT_YES if equal else EXIT_NO
    return EXIT_YES


def build_parser():
    parser = argparse.ArgumentParser(
        prog="langprime", description="Primality and decompositions of finite languages."
    )
    parser.add_argument("-o", "--output", help="write the result here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-prime", help="decide primality of a finite language")
    p.add_argument("file")
    p.add_argument("--prune", choices=("on", "off"), default="off")
    p.add_argument("--reading", choices=READINGS, default="plus")
    p.add_argument("--strategy", choices=STRATEGIES, default="closed")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_check_prime)

    p = sub.add_parser("concat-eq", help="decide L = L1 L2")
    p.add_argument("lang")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_concat_eq)

    p = sub.add_parser("gadget", help="build reduction instances")
    p.add_argument("kind", choices=("edge-to-rel", "rel-to-concat", "concat-to-prime", "full-chain"))
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("tiling", help="solve or verify a relational tiling instance")
    p.add_argument("action", choices=("solve", "verify"))
    p.add_argument("rel")
    p.add_argument("tiling", nargs="?")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-tiles", type=int, default=4)
    p.set_defaults(func=cmd_tiling)

    p = sub.add_parser("dfa", help="automaton utilities")
    p.add_argument("op", choices=("minimize", "equiv", "product", "concat", "enumerate", "stats"))
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_dfa)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as out:
                return args.func(args, out)
        return args.func(args, sys.stdout)
    except (LangPrimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def run():  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    run()
