"""Command-line front end.

Exit codes: 0 success, 1 domain error (or a failed check), 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
from typing import List, Optional, Sequence

from . import acceptance, schreier
from .boundary import (attractor_scan, orbit, plot_rows, preimage_family, sigma,
                       sigma_via_stabilizer)
from .cf import cf_labels, decompose, format_mat_letters
from .projective import ExtRational, act, word_to_matrix
from .twister import classify
from .virtualendo import phi, phi_bar, psi_bar
from .words import Context, Word, WordError, parse
from . import wreath as wr

WORD_HELP = """\
word syntax: letters a b c d are generators, A B C D their inverses, e is the
identity; spaces and '*' are ignored.  In moduli words c = AB and d = BA.
Fractions are written p/q with 1/0 for infinity."""


def _fraction(text: str) -> ExtRational:
    try:
        return ExtRational.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _word(text: str) -> Word:
    try:
        return parse(text, Context.MODULI)
    except WordError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _address(text: str) -> List[int]:
    digits = [t for t in text.replace(".", " ").replace(",", " ").split()]
    if len(digits) == 1 and len(digits[0]) > 1:
        digits = list(digits[0])
    if not digits or not all(d.isdigit() for d in digits):
        raise argparse.ArgumentTypeError(f"bad address {text!r}")
    return [int(d) for d in digits]


def _fmt_cycle(cycle: Sequence[ExtRational]) -> str:
    return "[" + ", ".join(map(str, cycle)) + "]"


# ---------------------------------------------------------------------------
# subcommands

def cmd_expand(args, out) -> int:
    d = decompose(args.fraction)
    print(f"{format_mat_letters(d.mat_letters)} | terminal {d.terminal}", file=out)
    if args.labels:
        print(f"labels {cf_labels(d)}", file=out)
        print(f"word {d.fund_word}", file=out)
    return 0


def _sigma_fn(oracle: str, twist: Optional[Word]):
    base = sigma if oracle == "decomp" else sigma_via_stabilizer
    if twist is None or twist.is_identity():
        return base
    inv = word_to_matrix(twist).inverse()
    return lambda x: base(act(inv, x))


def cmd_sigma(args, out) -> int:
    oracles = ["decomp", "stab"] if args.oracle == "both" else [args.oracle]
    for name in oracles:
        fn = _sigma_fn(name, args.twist)
        prefix = f"{name}: " if len(oracles) > 1 else ""
        if args.orbit:
            rep = orbit(fn, args.fraction, cap=args.cap)
            print(f"{prefix}tail {_fmt_cycle(rep.tail)}", file=out)
            print(f"{prefix}cycle {_fmt_cycle(rep.cycle)}", file=out)
            print(f"{prefix}steps {rep.steps_to_cycle}", file=out)
        else:
            print(f"{prefix}{fn(args.fraction)}", file=out)
    return 0


def cmd_attractor(args, out) -> int:
    s = attractor_scan(args.height, twist=args.twist, cap=args.cap, jobs=args.jobs)
    print(f"scanned {s.scanned}", file=out)
    for cyc in s.cycle_values():
        print(f"cycle {_fmt_cycle(cyc)}", file=out)
    for parity in sorted(s.parity_counts):
        for cyc, n in sorted(s.parity_counts[parity].items()):
            shown = _fmt_cycle([ExtRational(*c) for c in cyc])
            print(f"parity {parity} {shown} {n}", file=out)
    print(f"exceptions {len(s.exceptions)}", file=out)
    for line in s.exceptions[:20]:
        print(f"  {line}", file=out)
    return 1 if s.exceptions else 0


def cmd_plot(args, out) -> int:
    rows = plot_rows(args.height, jobs=args.jobs)
    if args.out == "-":
        fh, close = out, False
    else:
        fh, close = open(args.out, "w", newline=""), True
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["p", "q", "sp", "sq"])
        writer.writerows(rows)
    finally:
        if close:
            fh.close()
    if close:
        print(f"wrote {len(rows)} rows to {args.out}", file=out)
    return 0


def cmd_phi(args, out) -> int:
    if args.bar:
        print(phi_bar(args.word), file=out)
    elif args.psi_bar:
        print(psi_bar(args.word), file=out)
    else:
        print(phi(args.word), file=out)
    return 0


def cmd_rewrite(args, out) -> int:
    factors = schreier.rewrite(args.word)
    text = " ".join(f"{n}" if s > 0 else f"{n}^-1" for n, s in factors)
    print(text or "e", file=out)
    if args.trace:
        trace = schreier.rewrite_factors(args.word)
        print("trace " + " · ".join(str(f) for f in trace), file=out)
    return 0


def cmd_coset(args, out) -> int:
    state = schreier.coset_of(args.word)
    print(f"left {schreier.left_coset(args.word)}", file=out)
    print(f"right {schreier.right_coset(args.word)}", file=out)
    print(f"state {schreier.CosetState(state).name}", file=out)
    return 0


def _recursion(name: str) -> wr.Recursion:
    if name in wr.BUILTINS:
        return wr.builtin(name)
    if os.path.exists(name):
        with open(name, encoding="utf-8") as fh:
            return wr.load(fh.read(), os.path.basename(name))
    raise wr.WreathError(f"{name!r} is neither a built-in ({', '.join(wr.BUILTINS)}) nor a file")


def cmd_wreath(args, out) -> int:
    r = _recursion(args.recursion)
    w = r.word(args.word)
    print(wr.apply(r, w), file=out)
    if args.restrict is not None:
        print(f"restriction {wr.restriction(r, w, args.restrict)}", file=out)
    if args.level is not None:
        perm = wr.act_level(r, w, args.level)
        print(f"level {args.level} {perm}", file=out)
        print(f"order {wr.perm_order(perm)}", file=out)
    if args.nucleus:
        res = wr.nucleus_search(r, args.max_size, args.max_rounds)
        if isinstance(res, wr.Contracting):
            print(f"Contracting after {res.rounds} rounds", file=out)
            print("nucleus " + " ".join(sorted(map(str, res.nucleus), key=lambda s: (len(s), s))), file=out)
            print("core " + " ".join(sorted(map(str, res.core), key=lambda s: (len(s), s))), file=out)
        else:
            print(f"Unknown after {res.rounds} rounds: {res.reason}", file=out)
            print(f"size {res.size} max-length {res.max_length}", file=out)
            print("longest " + " ".join(map(str, res.longest)), file=out)
    return 0


def cmd_twist(args, out) -> int:
    c = classify(args.word, evidence=not args.no_evidence, height=args.height, jobs=args.jobs)
    print(str(c), file=out)
    print(f"representative {c.representative}", file=out)
    print(f"steps {c.steps}", file=out)
    for cyc in c.evidence:
        print(f"cycle {_fmt_cycle(cyc)}", file=out)
    return 0


def cmd_fibers(args, out) -> int:
    for y in preimage_family(args.fraction, args.count):
        print(f"{y} -> {sigma(y)}", file=out)
    return 0


def cmd_verify(args, out) -> int:
    results = acceptance.run_all(args.only, echo=lambda line: print(line, file=out, flush=True))
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria pass", file=out)
    return 1 if failed else 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="thurston4",
        description="Boundary values of the pullback map, virtual endomorphisms, "
                    "wreath recursions and twisting for f(z) = 3z^2/(2z^3+1).",
        epilog=WORD_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, helptext):
        return sub.add_parser(name, help=helptext, description=helptext, epilog=WORD_HELP,
                              formatter_class=argparse.RawDescriptionHelpFormatter)

    s = add("expand", "even continued-fraction decomposition p/q = terminal . w")
    s.add_argument("fraction", type=_fraction)
    s.add_argument("--labels", action="store_true", help="also print interval labels and the word")
    s.set_defaults(func=cmd_expand)

    s = add("sigma", "boundary value sigma(p/q), optionally its orbit")
    s.add_argument("fraction", type=_fraction)
    s.add_argument("--orbit", action="store_true")
    s.add_argument("--oracle", choices=["decomp", "stab", "both"], default="decomp",
                   help="decomposition formula, stabilizer route, or both")
    s.add_argument("--twist", type=_word, default=None, help="use the map f.h for this word h")
    s.add_argument("--cap", type=int, default=100_000)
    s.set_defaults(func=cmd_sigma)

    s = add("attractor", "terminal cycles of every reduced fraction up to a height")
    s.add_argument("--height", type=int, required=True)
    s.add_argument("--twist", type=_word, default=None)
    s.add_argument("--cap", type=int, default=100_000)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_attractor)

    s = add("plot", "CSV of (p, q, sp, sq) with sigma(p/q) = sp/sq")
    s.add_argument("--height", type=int, required=True)
    s.add_argument("--out", required=True, help="output file, '-' for stdout")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_plot)

    s = add("phi", "virtual endomorphism on a word of H, or its extensions")
    s.add_argument("word", type=_word)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--bar", action="store_true", help="left-coset extension")
    g.add_argument("--psi-bar", action="store_true", help="right-coset extension")
    s.set_defaults(func=cmd_phi)

    s = add("rewrite", "write a word of H in the generators g1..g5")
    s.add_argument("word", type=_word)
    s.add_argument("--trace", action="store_true", help="print the raw factor trace")
    s.set_defaults(func=cmd_rewrite)

    s = add("coset", "left and right cosets of H containing a word")
    s.add_argument("word", type=_word)
    s.set_defaults(func=cmd_coset)

    s = add("wreath", "evaluate a wreath recursion on a word")
    s.add_argument("recursion", help=f"built-in ({', '.join(wr.BUILTINS)}) or recursion file")
    s.add_argument("word")
    s.add_argument("--level", type=int)
    s.add_argument("--restrict", type=_address, help="vertex address such as 3 or 1.2")
    s.add_argument("--nucleus", action="store_true")
    s.add_argument("--max-size", type=int, default=200)
    s.add_argument("--max-rounds", type=int, default=50)
    s.set_defaults(func=cmd_wreath)

    s = add("twist", "Thurston class of the twisted map f.g")
    s.add_argument("word", type=_word)
    s.add_argument("--height", type=int, default=50, help="seed height for attractor evidence")
    s.add_argument("--no-evidence", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_twist)

    s = add("fibers", "distinct sigma-preimages of a fraction")
    s.add_argument("fraction", type=_fraction)
    s.add_argument("--count", type=int, default=5)
    s.set_defaults(func=cmd_fibers)

    s = add("verify", "run the acceptance suite and print a pass/fail table")
    s.add_argument("--only", type=int, nargs="+", choices=sorted(acceptance.CRITERIA),
                   help="criterion numbers to run")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("height", "count", "cap", "jobs", "max_size", "max_rounds"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            parser.print_usage(sys.stderr)
            print(f"{parser.prog}: error: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return 2
    try:
        return args.func(args, out)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
