"""Command-line front end.

Every subcommand is a thin composition of library calls: read inputs, run the
operation, print text (or JSON with --json), and exit 0 on success, 1 when a
computation reports an obstruction, nonexistence, or verification failure, and
2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import report, tables, verify
from .commuting import commuting_graph
from .constructors.groups import BadGroupSpec, build_group
from .constructors.semigroups import (
    NotDivisibleByFour,
    Obstructed,
    realize_cycle_centrefree,
    realize_semigroup,
)
from .graphs import BadGraphSpec, MalformedGraph, components, decompose, read_graph, to_dot
from .obstructions import GATES
from .search import SearchSpec, corpus_scan, search_realizations, write_outcome
from .tables import MalformedTable, classify_magma, read_table, write_table


def _emit(args, payload, text_lines):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _figures_for(args, graph, stem):
    if getattr(args, "figures", None):
        os.makedirs(args.figures, exist_ok=True)
        fig = os.path.join(args.figures, f"{stem}.png")
        tsv = os.path.join(args.figures, f"{stem}_components.tsv")
        report.render_graph_figure(graph, fig, title=stem)
        report.write_component_table(tsv, graph)
        print(f"wrote {fig}")
        print(f"wrote {tsv}")


def _cmd_table(args):
    table = read_table(args.file)
    cls = classify_magma(table)
    if cls == "magma":
        print("input table is not associative", file=sys.stderr)
        return 1
    cg = commuting_graph(table)
    dec = decompose(cg.graph)
    payload = {
        "order": table.order,
        "class": cls,
        "centre": sorted(cg.centre),
        "vertices": cg.graph.order,
        "decomposition": dec.rendering,
    }
    _emit(
        args,
        payload,
        [
            f"order {table.order} ({cls})",
            f"centre size {len(cg.centre)}: {sorted(cg.centre)}",
            f"commuting graph on {cg.graph.order} vertices",
            f"decomposition {dec.rendering}",
        ],
    )
    stem = os.path.splitext(os.path.basename(args.file))[0]
    _figures_for(args, cg.graph, f"{stem}_commuting")
    return 0


def _cmd_build(args):
    table = build_group(args.spec)
    cg = commuting_graph(table)
    dec = decompose(cg.graph)
    payload = {
        "spec": args.spec,
        "order": table.order,
        "centre": sorted(cg.centre),
        "decomposition": dec.rendering,
    }
    lines = [
        f"built group of order {table.order}",
        f"centre size {len(cg.centre)}",
        f"commuting graph decomposition {dec.rendering}",
    ]
    if args.output:
        write_table(args.output, table, comment=f"group {args.spec}")
        lines.append(f"wrote {args.output}")
        payload["output"] = args.output
    _emit(args, payload, lines)
    return 0


def _cmd_realize(args):
    graph = read_graph(args.file)
    try:
        if args.cycle:
            is_cycle = (
                graph.order >= 3
                and all(len(graph.adj[v]) == 2 for v in range(graph.order))
                and graph.edge_count() == graph.order
                and len(components(graph)) == 1
            )
            if not is_cycle:
                print("input error: --cycle requires a single cycle graph", file=sys.stderr)
                return 2
            table = realize_cycle_centrefree(graph.order)
        else:
            table = realize_semigroup(graph)
    except (Obstructed, NotDivisibleByFour) as exc:
        print(f"not realizable: {exc}", file=sys.stderr)
        return 1
    lines = [f"realized by a semigroup of order {table.order}"]
    payload = {"order": table.order}
    if args.output:
        write_table(args.output, table, comment=f"realizes {args.file}")
        lines.append(f"wrote {args.output}")
        payload["output"] = args.output
    else:
        lines.append(tables.format_table(table).rstrip("\n"))
    _emit(args, payload, lines)
    _figures_for(args, graph, os.path.splitext(os.path.basename(args.file))[0])
    return 0


def _cmd_gate(args):
    graph = read_graph(args.file)
    verdict = GATES[args.target](graph)
    payload = {
        "target": verdict.target,
        "passed": verdict.passed,
        "violations": [{"kind": ob.kind, "witness": list(ob.witness)} for ob in verdict.violations],
    }
    _emit(args, payload, [verdict.describe()])
    return 0 if verdict.passed else 1


def _cmd_search(args):
    graph = read_graph(args.file)
    dedup = {"iso": "iso", "anti": "iso+anti", "none": "none"}[args.dedup]
    spec = SearchSpec(
        target=graph,
        order=args.order,
        centrefree=args.centrefree,
        dedup=dedup,
        node_budget=args.budget_nodes,
        time_budget=args.budget_seconds,
        workers=args.workers,
    )
    outcome = search_realizations(spec)
    payload = {
        "classes": len(outcome.representatives),
        "total_solutions": outcome.total_solutions,
        "nodes_explored": outcome.nodes_explored,
        "exhausted": outcome.exhausted,
    }
    lines = [
        f"{len(outcome.representatives)} realization class(es); "
        f"{outcome.total_solutions} solutions before dedup",
        f"nodes explored {outcome.nodes_explored}; exhausted {outcome.exhausted}",
    ]
    if args.out:
        manifest = write_outcome(args.out, spec, outcome)
        lines.append(f"wrote {manifest}")
        payload["manifest"] = manifest
    _emit(args, payload, lines)
    if not outcome.exhausted:
        return 1
    return 0 if outcome.representatives else 1


def _cmd_scan(args):
    rep = corpus_scan(args.directory, args.predicate)
    payload = {
        "predicate": rep.predicate,
        "files": len(rep.entries),
        "matches": [e.file for e in rep.matches],
        "skipped": [{"file": e.file, "status": e.status} for e in rep.skipped],
    }
    lines = [f"scanned {len(rep.entries)} files with predicate {rep.predicate}"]
    for e in rep.entries:
        if e.status != "ok":
            lines.append(f"  {e.file}: skipped ({e.status})")
        elif e.matched:
            lines.append(
                f"  {e.file}: MATCH order={e.order} |Z|={e.centre_size} "
                f"vertices={e.vertex_count} {e.decomposition}"
            )
    lines.append(f"{len(rep.matches)} match(es), {len(rep.skipped)} skipped")
    _emit(args, payload, lines)
    return 0


def _cmd_export_dot(args):
    graph = read_graph(args.file)
    text = to_dot(graph)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        print(text, end="")
    return 0


def _cmd_verify(args):
    results = verify.run_suite(suite=args.suite, corpus=args.corpus, workers=args.workers)
    failed = 0
    lines = []
    for res in results:
        lines.append(res.line())
        if res.status == "fail":
            failed += 1
    payload = {
        "suite": args.suite,
        "results": [
            {"number": r.number, "name": r.name, "status": r.status, "detail": r.detail}
            for r in results
        ],
    }
    _emit(args, payload, lines)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write("number\tname\tstatus\tdetail\n")
            for r in results:
                fh.write(f"{r.number}\t{r.name}\t{r.status}\t{r.detail}\n")
        print(f"wrote {args.report}")
    return 1 if failed else 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="comgraph",
        description="Commuting graphs of finite semigroups and groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="commuting graph and decomposition of a table file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--figures", metavar="DIR", help="also render figure and component table")
    p.set_defaults(fn=_cmd_table)

    p = sub.add_parser("build", help="construct a group from a spec string")
    p.add_argument("spec", help="e.g. dihedral:16, sl2:5, psl2:7, j, invext:3x3, sl24ext")
    p.add_argument("-o", "--output", help="write the table to a file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("realize", help="construct a semigroup realizing a graph file")
    p.add_argument("file")
    p.add_argument("--cycle", action="store_true", help="use the centrefree cycle construction")
    p.add_argument("-o", "--output")
    p.add_argument("--json", action="store_true")
    p.add_argument("--figures", metavar="DIR")
    p.set_defaults(fn=_cmd_realize)

    p = sub.add_parser("gate", help="run a realizability gate on a graph file")
    p.add_argument("file")
    p.add_argument("--target", choices=sorted(GATES), required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_gate)

    p = sub.add_parser("search", help="exhaustive search for realizing tables")
    p.add_argument("file")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--centrefree", action="store_true")
    p.add_argument("--dedup", choices=["iso", "anti", "none"], default="anti")
    p.add_argument("--budget-nodes", type=int, default=10**9)
    p.add_argument("--budget-seconds", type=float, default=3600.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", metavar="DIR", help="persist representatives and a manifest")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("scan", help="evaluate a predicate over a directory of table files")
    p.add_argument("directory")
    p.add_argument("--predicate", required=True, help="connected or decomp:<rendering>")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_scan)

    p = sub.add_parser("export-dot", help="Graphviz export of a graph file")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_export_dot)

    p = sub.add_parser("verify-paper", help="run the stock verification suite")
    p.add_argument("--suite", choices=["quick", "full"], default="quick")
    p.add_argument("--corpus", help="directory of group tables for the corpus criterion")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report", help="write a tab-separated report file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (MalformedTable, MalformedGraph, BadGraphSpec, BadGroupSpec) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
