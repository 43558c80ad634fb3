"""Command-line surface over the library.

Every verb is a thin adapter printing line-oriented ``key = value``
reports to stdout (diagnostics to stderr).  Exit status: 0 success,
1 negative mathematical verdict, 2 input error, 3 budget exhausted.
With --figures DIR the report paths also render matplotlib figures
into that directory alongside the text output.
"""

from __future__ import annotations

import argparse
import os
import sys

from plumblat import contfrac, embed, families, harness, kirby
from plumblat.plumbing import (
    PlumbingGraph,
    determinant,
    h1_order,
    is_in_wp,
    is_negative_definite,
    quantity_I,
    seifert_invariants,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _parse_graph(text: str) -> PlumbingGraph:
    return PlumbingGraph.from_text(text)


def _limits(args) -> embed.SearchLimits:
    kwargs = {}
    if getattr(args, "max_coord", None) is not None:
        kwargs["max_abs_coordinate"] = args.max_coord
    if getattr(args, "nodes", None) is not None:
        kwargs["node_budget"] = args.nodes
    return embed.SearchLimits(**kwargs)


def _figuredir(args) -> str | None:
    d = getattr(args, "figures", None)
    if d:
        os.makedirs(d, exist_ok=True)
    return d


def cmd_analyze(args) -> int:
    g = _parse_graph(args.graph)
    print("graph = %s" % g.to_text())
    print("n = %d" % g.n)
    print("I = %d" % quantity_I(g))
    det = determinant(g)
    print("det = %d" % det)
    print("h1_order = %d" % abs(det))
    print("negative_definite = %s" % ("yes" if is_negative_definite(g) else "no"))
    print("in_wp = %s" % ("yes" if is_in_wp(g) else "no"))
    if g.is_star:
        print("seifert = %s" % seifert_invariants(g))
        print("h1_formula = %d" % h1_order(g))
        print("link_components = %d" % families.link_component_count(g))
    figdir = _figuredir(args)
    if figdir:
        from plumblat import figures

        path = figures.save_graph_figure(g, os.path.join(figdir, "graph.png"))
        print("figure = %s" % path)
    return EXIT_OK


def cmd_embed(args) -> int:
    g = _parse_graph(args.graph)
    res = embed.find_embedding(g, _limits(args), parallel=args.parallel)
    print("graph = %s" % g.to_text())
    print("nodes = %d" % res.nodes)
    if res.status == embed.FOUND:
        print("embeddable = yes")
        if not res.deterministic:
            print("mode = parallel (certificate choice is schedule dependent)")
        for v in res.certificate.vectors:
            print(",".join(str(x) for x in v))
        return EXIT_OK
    if res.status == embed.NOT_EMBEDDABLE:
        print("embeddable = NOT-EMBEDDABLE")
        return EXIT_NEGATIVE
    print("embeddable = BUDGET-EXHAUSTED (inconclusive)")
    return EXIT_BUDGET


def cmd_complement(args) -> int:
    s = contfrac.parse_cfstring(args.string)
    comp = contfrac.point_rule_complement(s)
    print(contfrac.format_cfstring(comp))
    figdir = _figuredir(args)
    if figdir:
        from plumblat import figures

        path = figures.save_point_rule_figure(s, comp, os.path.join(figdir, "point_rule.png"))
        print("figure = %s" % path)
    return EXIT_OK


def cmd_classify(args) -> int:
    g = _parse_graph(args.graph)
    matches = families.classify(g)
    print("graph = %s" % g.to_text())
    if not matches:
        print("family = none")
        return EXIT_NEGATIVE
    for d in matches:
        print("family = %s" % d.serialize())
    return EXIT_OK


def cmd_collapse(args) -> int:
    s1 = contfrac.parse_cfstring(args.string1)
    s2 = contfrac.parse_cfstring(args.string2)
    trace = kirby.complementary_collapse(s1, s2)
    for line in trace.report_lines():
        print(line)
    return EXIT_OK if trace.collapsed else EXIT_NEGATIVE


def cmd_ribbon_check(args) -> int:
    g = _parse_graph(args.graph)
    report = kirby.ribbon_reduction_cl(g)
    for line in report.report_lines():
        print(line)
    return EXIT_OK if report.in_lisca_list else EXIT_NEGATIVE


def cmd_enumerate(args) -> int:
    graphs = harness.enumerate_wp_graphs(args.n)
    for g in graphs:
        print("graph = %s | I = %d | det = %d" % (g.to_text(), quantity_I(g), determinant(g)))
    print("count = %d" % len(graphs))
    return EXIT_OK


def cmd_verify(args) -> int:
    cache = harness.VerdictCache(args.cache) if args.cache else None
    worst = EXIT_OK
    for n in range(4, args.n_max + 1):
        report = harness.verify_classification(
            n, cache=cache, check_oracle=args.oracle, parallel=args.parallel
        )
        for line in report.report_lines():
            print(line)
        figdir = _figuredir(args)
        if figdir:
            from plumblat import figures

            path = figures.save_sweep_figure(report, os.path.join(figdir, "verify_n%d.png" % n))
            print("figure = %s" % path)
        if not report.ok:
            worst = EXIT_NEGATIVE
    return worst


def cmd_families(args) -> int:
    report = harness.verify_families(args.max_n)
    for line in report.report_lines():
        print(line)
    figdir = _figuredir(args)
    if figdir:
        from plumblat import figures

        path = figures.save_families_figure(report, os.path.join(figdir, "families.png"))
        print("figure = %s" % path)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plumblat",
        description="Lattice embedding obstructions for star-shaped plumbing graphs.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("analyze", help="invariants of a plumbing graph")
    p.add_argument("graph")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("embed", help="decide the embedding obstruction")
    p.add_argument("graph")
    p.add_argument("--max-coord", type=int, dest="max_coord")
    p.add_argument("--nodes", type=int)
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("complement", help="Riemenschneider point-rule complement")
    p.add_argument("string")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("classify", help="match a graph against the candidate families")
    p.add_argument("graph")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("collapse", help="complementary-leg blow-down trace")
    p.add_argument("string1")
    p.add_argument("string2")
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("ribbon-check", help="complementary-leg reduction report")
    p.add_argument("graph")
    p.set_defaults(func=cmd_ribbon_check)

    p = sub.add_parser("enumerate", help="list admissible graphs at a vertex count")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="exhaustive classification check up to n")
    p.add_argument("--n-max", type=int, required=True, dest="n_max")
    p.add_argument("--oracle", action="store_true", help="cross-check with the naive enumerator")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--cache", metavar="FILE")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("families", help="check every family instance up to a size")
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(func=cmd_families)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
