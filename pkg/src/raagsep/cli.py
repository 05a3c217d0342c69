"""Command-line front end.

Exit status: 0 affirmative, 1 negative, 2 undecided, 3 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import selftest
from .graph_product import GraphProduct
from .graphs import GraphFormatError, chordless_cycle, parse_graph, perfect_elimination_ordering
from .tower import Tower, TowerError, TowerFormatError, TowerSpec, load_tower
from .witness import InSubgroup, SeparationWitness, format_certificate, separate_from_cyclic
from .words import WordSyntaxError, format_word

YES, NO, UNDECIDED, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str):
    try:
        return parse_graph(_read(path))
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _group(args) -> Tower:
    if args.tower and args.graph:
        raise InputError("give either --graph or --tower, not both")
    if args.tower:
        if args.rank:
            raise InputError("--rank applies to --graph only; tower files declare ranks")
        try:
            return load_tower(args.tower)
        except (TowerFormatError, OSError) as exc:
            raise InputError(f"{args.tower}: {exc}") from None
    if not args.graph:
        raise InputError("one of --graph or --tower is required")
    ranks = {}
    for item in args.rank:
        v, sep, r = item.partition("=")
        if not sep or not r.lstrip("-").isdigit():
            raise InputError(f"bad --rank {item!r}; expected VERTEX=INT")
        ranks[v] = int(r)
    try:
        return Tower(TowerSpec(GraphProduct(_graph(args.graph), ranks)))
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _word(tower: Tower, text: str, what: str = "word"):
    try:
        return tower.parse(text)
    except WordSyntaxError as exc:
        raise InputError(f"{what} {text!r}: {exc}") from None


def _base_word(tower: Tower, text: str, what: str = "word"):
    w = _word(tower, text, what)
    if tower.level(w):
        raise InputError(f"{what} {text!r} uses stable letters; this command works at level 0")
    return tower.base.from_letters(w)


def cmd_chordal(args) -> int:
    g = _graph(args.graph)
    if perfect_elimination_ordering(g) is not None:
        print("chordal")
        return YES
    print(f"not chordal: induced cycle {' '.join(chordless_cycle(g))}")
    return NO


def cmd_peo(args) -> int:
    g = _graph(args.graph)
    order = perfect_elimination_ordering(g)
    if order is None:
        print(f"not chordal: induced cycle {' '.join(chordless_cycle(g))}")
        return NO
    print(f"peo: {' '.join(order)}")
    return YES


def cmd_nf(args) -> int:
    tower = _group(args)
    w = _word(tower, args.word)
    if tower.level(w) == 0:
        nf = tower.base.normalize(tower.base.from_letters(w))
        print(f"normal form: {format_word(tower.base.to_letters(nf))}")
    else:
        print(f"reduced form: {format_word(tower.simplify(w))}")
    return YES


def cmd_wp(args) -> int:
    tower = _group(args)
    w = _word(tower, args.word)
    trivial, traces = tower.explain(w)
    if args.trace:
        for trace in traces:
            for step in trace.steps:
                print(f"level {trace.level}: {step.rule} at {step.position}")
    print("trivial" if trivial else "nontrivial")
    return YES if trivial else NO


def cmd_equal(args) -> int:
    tower = _group(args)
    same = tower.equal(_word(tower, args.word1), _word(tower, args.word2))
    print("equal" if same else "not equal")
    return YES if same else NO


def cmd_cyclic_member(args) -> int:
    tower = _group(args)
    g, h = _base_word(tower, args.g, "--g"), _base_word(tower, args.h, "--h")
    k = tower.base.cyclic_member(h, g)
    if k is None:
        print("not a member")
        return NO
    print(f"member k={k}")
    return YES


def cmd_retract(args) -> int:
    tower = _group(args)
    w = _word(tower, args.word)
    try:
        print(format_word(tower.retraction(w, args.level)))
    except TowerError as exc:
        raise InputError(str(exc)) from None
    return YES


def cmd_separate(args) -> int:
    tower = _group(args)
    g, h = _word(tower, args.g, "--g"), _word(tower, args.h, "--h")
    outcome = separate_from_cyclic(g, h, tower, args.budget)
    cert = format_certificate(outcome, g, h)
    if args.output:
        try:
            Path(args.output).write_text(cert, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc.strerror}") from None
        print(cert.splitlines()[-1])
    else:
        sys.stdout.write(cert)
    if isinstance(outcome, SeparationWitness):
        return YES
    if isinstance(outcome, InSubgroup):
        return NO
    return UNDECIDED


def cmd_selftest(args) -> int:
    results = selftest.run_all(args.seed, args.count)
    for r in results:
        print(r.line())
    return YES if all(r.ok for r in results) else NO


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _group_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", help="graph file (base RAAG / graph product)")
    p.add_argument("--rank", action="append", default=[], metavar="V=R", help="vertex rank for --graph")
    p.add_argument("--tower", help="tower file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="raagsep", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("chordal", help="test chordality")
    p.add_argument("graph")
    p.set_defaults(func=cmd_chordal)

    p = sub.add_parser("peo", help="print a perfect elimination ordering")
    p.add_argument("graph")
    p.set_defaults(func=cmd_peo)

    p = sub.add_parser("nf", help="normal form of a word")
    _group_options(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("wp", help="word problem: is the word trivial?")
    _group_options(p)
    p.add_argument("--trace", action="store_true", help="print pinch-reduction steps")
    p.add_argument("word")
    p.set_defaults(func=cmd_wp)

    p = sub.add_parser("equal", help="do two words represent the same element?")
    _group_options(p)
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("cyclic-member", help="is h a power of g? (level 0)")
    _group_options(p)
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.set_defaults(func=cmd_cyclic_member)

    p = sub.add_parser("retract", help="retract a tower word to a lower level")
    _group_options(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("word")
    p.set_defaults(func=cmd_retract)

    p = sub.add_parser("separate", help="find a finite quotient separating h from <g>")
    _group_options(p)
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--budget", type=_positive, default=64, help="largest modulus tried (default 64)")
    p.add_argument("--output", help="write the certificate here")
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("selftest", help="run the faithfulness and oracle corpora")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=_positive, default=1000)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"raagsep: error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
