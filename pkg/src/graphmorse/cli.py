"""Command-line driver: ``graphmorse {mvf,diagram,bottleneck,stability,gen}``.

Exit codes: 0 success, 1 usage or parse error, 2 stability failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import relation
from .conley import conley_index
from .metrics import bottleneck, check_stability
from .morse import block_labels, build_mgraph, morse_decomposition, to_dot
from .multivector import build_mvf
from .persistence import (diagram_to_csv, diagram_to_json, morse_persistence, read_diagram,
                          slice_diagram)
from .space import GraphSpace

log = logging.getLogger("graphmorse")

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args):
    try:
        W = relation.read_matrix(args.matrix)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read matrix {args.matrix}: {exc}") from None
    space = GraphSpace.without_zero_edges(W) if args.drop_zero_edges else GraphSpace(W.n)
    return W, space


def mvf_report(space, W, lam) -> dict:
    mvf = build_mvf(space, W, lam)
    g = build_mgraph(space, mvf)
    dec = morse_decomposition(g)
    labels = block_labels(mvf)
    morse_sets = []
    for m in dec.morse_sets:
        ix = conley_index(space, m.cells)
        morse_sets.append({"blocks": [labels[b] for b in m.blocks],
                           "cells": [c.name for c in sorted(m.cells)],
                           "beta0": ix.beta0, "beta1": ix.beta1})
    return {
        "lambda": lam,
        "blocks": [{"label": labels[b[0]], "cells": [c.name for c in b],
                    "mouth": [c.name for c in sorted(space.mouth(b))]} for b in mvf.blocks],
        "arcs": [[labels[a], labels[b]] for a, b in sorted(g.arcs)],
        "morse_sets": morse_sets,
        "order": sorted([morse_sets[q]["blocks"][0], morse_sets[p]["blocks"][0]] for q, p in dec.order),
    }, (mvf, g, dec)


def cmd_mvf(args) -> int:
    W, space = _load(args)
    report, (mvf, g, dec) = mvf_report(space, W, args.lam)
    if args.format == "dot":
        indices = {}
        for m in dec.morse_sets:
            ix = conley_index(space, m.cells)
            for b in m.blocks:
                indices[b] = ix
        _emit(to_dot(mvf, g, indices), args.output)
    else:
        _emit(json.dumps(report, indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_diagram(args) -> int:
    W, space = _load(args)
    d = morse_persistence(space, W, verbose=args.verbose_trajectory, threads=args.threads)
    if args.slice is not None:
        d = slice_diagram(d, args.slice)
    _emit(diagram_to_csv(d) if args.format == "csv" else diagram_to_json(d), args.output)
    if args.figure:
        from .plotting import plot_diagram

        plot_diagram(d, args.figure, title=Path(args.matrix).name)
        log.info("wrote %s", args.figure)
    return EXIT_OK


def cmd_bottleneck(args) -> int:
    try:
        d1, d2 = read_diagram(args.first), read_diagram(args.second)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read diagram: {exc}") from None
    if args.slice is not None:
        d1, d2 = slice_diagram(d1, args.slice), slice_diagram(d2, args.slice)
    dist = bottleneck(d1, d2)
    print("+inf" if math.isinf(dist) else relation.format_number(dist))
    return EXIT_OK


def cmd_stability(args) -> int:
    W, space = _load(args)
    if args.epsilon < 0:
        raise UsageError("--epsilon must be nonnegative")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    report = check_stability(W, args.epsilon, args.trials, args.seed, tolerance=args.tolerance,
                             space=space, slice_k=args.slice, threads=args.threads)
    _emit(json.dumps(report.to_obj(), indent=2) + "\n", args.output)
    if not report.passed:
        log.error("stability bound violated for seeds %s", report.failures)
        return EXIT_FAIL
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.n is not None and args.n < 1:
        raise UsageError("--n must be positive")
    if args.generator == "random":
        if args.n is None:
            raise UsageError("gen random needs --n")
        W = relation.random_relation(args.n, args.seed, decimals=args.decimals)
    else:
        if args.input:
            try:
                P = relation.read_matrix(args.input).entries
                W = relation.markov_relation(P)
            except (OSError, ValueError) as exc:
                raise UsageError(f"invalid transition matrix {args.input}: {exc}") from None
        else:
            if args.n is None:
                raise UsageError("gen markov needs --n or --input")
            W = relation.markov_relation(relation.random_markov(args.n, args.seed))
    text = relation.to_json(W) if args.format == "json" else relation.to_csv(W)
    _emit(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graphmorse",
                description="Multivector fields, Morse decompositions and Morse persistence of relation matrices.")
    p.add_argument("-q", "--quiet", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def matrix_args(sp):
        sp.add_argument("matrix", help="relation matrix (CSV or JSON)")
        sp.add_argument("--drop-zero-edges", action="store_true",
                        help="omit edges with W(i,j) = W(j,i) = 0")
        sp.add_argument("-o", "--output", help="write to file instead of stdout")

    sp = sub.add_parser("mvf", help="multivector field, M-graph and Conley indices at one threshold")
    matrix_args(sp)
    sp.add_argument("--lam", "--lambda", dest="lam", type=float, required=True)
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp.set_defaults(func=cmd_mvf)

    sp = sub.add_parser("diagram", help="Morse persistence diagram")
    matrix_args(sp)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--verbose-trajectory", action="store_true",
                    help="record each track's Conley index in every regime")
    sp.add_argument("--slice", type=int, choices=(0, 1), help="keep only points with beta_k > 0")
    sp.add_argument("--figure", help="also render the diagram to this image file")
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=cmd_diagram)

    sp = sub.add_parser("bottleneck", help="bottleneck distance between two diagram files")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--slice", type=int, choices=(0, 1))
    sp.set_defaults(func=cmd_bottleneck)

    sp = sub.add_parser("stability", help="randomized check of d_B <= epsilon")
    matrix_args(sp)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tolerance", type=float, default=1e-9)
    sp.add_argument("--slice", type=int, choices=(0, 1))
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=cmd_stability)

    sp = sub.add_parser("gen", help="generate a relation matrix")
    sp.add_argument("generator", choices=("random", "markov"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--input", help="row-stochastic matrix to convert (markov)")
    sp.add_argument("--decimals", type=int, default=4, help="rounding for random weights")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not log.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        log.addHandler(handler)
    log.setLevel(logging.WARNING if args.quiet else logging.INFO)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"graphmorse: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
