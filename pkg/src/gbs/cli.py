"""Command-line front end.

Exit codes: 0 for yes/success, 1 for no, 2 for undecided, 3 for any input or
usage error.  Diagnostics go to stderr; reports are deterministic on stdout.
"""
from __future__ import annotations

import argparse
import random
import statistics
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import britton, conjugacy, gen, graphs, monoid

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise graphs.GbsError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> graphs.GbsGraph:
    return graphs.parse_graph(_read(path))


def _load_word(arg: str, graph: graphs.GbsGraph, literal: bool):
    text = arg if literal else _read(arg)
    return graphs.parse_word(text, graph)


def _factorization(arg: str, graph, args) -> graphs.GFactorization:
    letters = _load_word(arg, graph, args.literal)
    if getattr(args, "pi1", False):
        tree = graphs.spanning_tree(graph)
        base = args.base or min(graph.vertices)
        return graphs.rebase(letters, graph, tree, base)
    return graphs.to_factorization(letters, graph)


def _cmd_validate(args) -> int:
    graph = graphs.parse_graph(_read(args.graph), check=False)
    report = graphs.validate(graph)
    if report:
        for line in report:
            print(line)
        return EXIT_ERROR
    print("valid")
    return EXIT_YES


def _cmd_wp(args) -> int:
    graph = _load_graph(args.graph)
    f = _factorization(args.word, graph, args)
    if not f.is_closed:
        raise graphs.WordError("word is not a closed factorization")
    if britton.word_problem(f):
        print("trivial")
        return EXIT_YES
    print("nontrivial")
    return EXIT_NO


def _cmd_reduce(args) -> int:
    graph = _load_graph(args.graph)
    f = _factorization(args.word, graph, args)
    print(britton.britton_reduce_fast(f))
    return EXIT_YES


def _cmd_cyc_reduce(args) -> int:
    graph = _load_graph(args.graph)
    f = _factorization(args.word, graph, args)
    print(britton.cyclically_reduce(f))
    return EXIT_YES


def _cmd_conj(args) -> int:
    graph = _load_graph(args.graph)
    v = graphs.to_factorization(_load_word(args.v, graph, args.literal), graph)
    w = graphs.to_factorization(_load_word(args.w, graph, args.literal), graph)
    res = conjugacy.conjugate(v, w, bound=args.bound)
    print(res.verdict.value)
    if res.verdict is conjugacy.ConjVerdict.CONJUGATE and args.witness:
        print(graphs.letters_to_text(res.witness))
    if res.verdict is conjugacy.ConjVerdict.CONJUGATE:
        return EXIT_YES
    if res.verdict is conjugacy.ConjVerdict.NOT_CONJUGATE:
        return EXIT_NO
    return EXIT_UNKNOWN


def _cmd_monoid_congruent(args) -> int:
    pres = monoid.parse_presentation(_read(args.presentation))
    e = monoid.parse_vector(args.e, pres.dim)
    f = monoid.parse_vector(args.f, pres.dim)
    res = monoid.congruent(e, f, pres, bound=args.bound)
    print(res.verdict.value)
    if res.verdict is monoid.Verdict.CONGRUENT:
        return EXIT_YES
    if res.verdict is monoid.Verdict.NOT_CONGRUENT:
        return EXIT_NO
    return EXIT_UNKNOWN


def _cmd_convert(args) -> int:
    pres = monoid.parse_presentation(_read(args.presentation))
    e = monoid.parse_vector(args.e, pres.dim)
    f = monoid.parse_vector(args.f, pres.dim)
    graph, k, ell = monoid.monoid_to_gbs(pres, e, f)
    out = graph.to_text()
    out += f"# query-v: a^{k}\n"
    out += f"# query-w: a^{ell}\n"
    print(out, end="")
    return EXIT_YES


def _percentiles(samples: list[float]) -> str:
    if not samples:
        return "n/a"
    qs = statistics.quantiles(samples, n=100, method="inclusive") if len(samples) > 1 else [samples[0]] * 99
    return f"p50={qs[49]*1e3:.3f}ms p90={qs[89]*1e3:.3f}ms p99={qs[98]*1e3:.3f}ms"


def _cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    wp_agree = red_agree = conj_agree = 0
    timings = {"wp": [], "reduce": [], "conj": []}
    for _ in range(args.count):
        graph = gen.random_graph(rng, args.max_vertices, args.max_edges, 5)
        f = gen.random_closed_factorization(rng, graph, args.max_len, args.max_exp)

        t0 = time.perf_counter()
        fast_trivial = britton.word_problem(f)
        timings["wp"].append(time.perf_counter() - t0)
        naive = britton.britton_reduce_naive(f)
        if fast_trivial == (naive.n == 0 and naive.k0 == 0):
            wp_agree += 1

        t0 = time.perf_counter()
        reduced = britton.britton_reduce_fast(f)
        timings["reduce"].append(time.perf_counter() - t0)
        if britton.is_britton_reduced(reduced) and britton.word_problem(
            graphs.concat(reduced, graphs.invert(naive))
        ):
            red_agree += 1

        w = gen.conjugated_word(rng, graph, f)
        t0 = time.perf_counter()
        res = conjugacy.conjugate(f, w)
        timings["conj"].append(time.perf_counter() - t0)
        ok = res.verdict is conjugacy.ConjVerdict.CONJUGATE and conjugacy.verify_conjugator(
            res.witness, f, w
        )
        brute, _ = conjugacy.conj_brute_status(f, w, radius=60)
        if brute is not conjugacy.ConjVerdict.UNKNOWN:
            ok = ok and brute is res.verdict
        if ok:
            conj_agree += 1

    print(f"seed: {args.seed}")
    print(f"instances: {args.count}")
    print(f"word-problem agreement: {wp_agree}/{args.count}")
    print(f"reduction agreement: {red_agree}/{args.count}")
    print(f"conjugacy agreement: {conj_agree}/{args.count}")
    for name, samples in timings.items():
        print(f"timing {name}: {_percentiles(samples)}", file=sys.stderr)
    ok = wp_agree == red_agree == conj_agree == args.count
    return EXIT_YES if ok else EXIT_NO


def _build_parser() -> _Parser:
    parser = _Parser(prog="gbs", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    word_opts = argparse.ArgumentParser(add_help=False)
    word_opts.add_argument(
        "--literal", action="store_true", help="take words as inline text, not file paths"
    )

    pi1_opts = argparse.ArgumentParser(add_help=False)
    pi1_opts.add_argument(
        "--pi1",
        action="store_true",
        help="interpret the word in the fundamental group over the spanning tree",
    )
    pi1_opts.add_argument("--base", default=None, help="base vertex for --pi1")

    p = sub.add_parser("validate", help="check a graph file")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("wp", parents=[word_opts, pi1_opts], help="word problem")
    p.add_argument("graph")
    p.add_argument("word")
    p.set_defaults(func=_cmd_wp)

    p = sub.add_parser("reduce", parents=[word_opts, pi1_opts], help="Britton-reduce")
    p.add_argument("graph")
    p.add_argument("word")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser(
        "cyc-reduce", parents=[word_opts, pi1_opts], help="cyclically Britton-reduce"
    )
    p.add_argument("graph")
    p.add_argument("word")
    p.set_defaults(func=_cmd_cyc_reduce)

    p = sub.add_parser("conj", parents=[word_opts], help="conjugacy")
    p.add_argument("graph")
    p.add_argument("v")
    p.add_argument("w")
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--witness", action="store_true", help="print a verified conjugator")
    p.set_defaults(func=_cmd_conj)

    p = sub.add_parser("monoid", help="commutative monoid congruence")
    msub = p.add_subparsers(dest="subcommand", required=True)
    m = msub.add_parser("congruent")
    m.add_argument("presentation")
    m.add_argument("e")
    m.add_argument("f")
    m.add_argument("--bound", type=int, default=None)
    m.set_defaults(func=_cmd_monoid_congruent)

    p = sub.add_parser("convert", help="instance converters")
    csub = p.add_subparsers(dest="subcommand", required=True)
    c = csub.add_parser("monoid-to-gbs")
    c.add_argument("presentation")
    c.add_argument("e")
    c.add_argument("f")
    c.set_defaults(func=_cmd_convert)

    p = sub.add_parser("bench", help="seeded oracle cross-check harness")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--max-edges", type=int, default=6)
    p.add_argument("--max-exp", type=int, default=8)
    p.add_argument("--max-len", type=int, default=14)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except graphs.GbsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
