"""Command-line interface.

Subcommands: ``gen`` (emit stock families as graph6), ``lpt`` / ``lct`` /
``gallai`` (exact values with witnesses, one JSON object per input record),
``transversal`` (exact or constructive), ``verify`` (corpus campaigns), and
``remark25`` (the split-Petersen induced-linear-forest classification).
All output is machine-parsable; graphs go to stdout as graph6, everything
else as JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .constructions import (
    bipartite_minus_matching,
    clawfree_stretched_split_petersen,
    clique_star,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_triangles,
    linear_forest,
    path_graph,
    petersen,
    split_petersen,
    stretched_split_petersen,
    triangle_star,
)
from .errors import GallaiError
from .graph6 import parse_graph6, to_graph6
from .transversal import (
    gallai_vertices,
    lct_exact,
    lpt_exact,
    run_sublinear_transversal,
)
from .verify import CheckSpec, gallai_counterexample_scan, max_induced_linear_forests, run_campaign


def _gen_graph(args) -> list:
    fam = args.family
    if fam == "petersen":
        return [petersen()]
    if fam == "split-petersen":
        return [split_petersen()[0]]
    if fam == "stretched-split-petersen":
        return [stretched_split_petersen(args.p, args.q)]
    if fam == "clawfree-split-petersen":
        return [clawfree_stretched_split_petersen(args.p, args.q)]
    if fam == "complete-bipartite":
        return [complete_bipartite(args.k, args.t)]
    if fam == "bipartite-minus-matching":
        return [bipartite_minus_matching(args.t)]
    if fam == "clique-star":
        return [clique_star(args.k, args.t)[0]]
    if fam == "disjoint-triangles":
        return [disjoint_triangles(args.t)]
    if fam == "triangle-star":
        return [triangle_star(args.t)]
    if fam == "linear-forest":
        return [linear_forest([int(s) for s in args.sizes.split(",")])]
    if fam == "path":
        return [path_graph(args.count)]
    if fam == "cycle":
        return [cycle_graph(args.count)]
    if fam == "complete":
        return [complete_graph(args.count)]
    raise GallaiError(f"unknown family {fam!r}")


FAMILIES = (
    "petersen",
    "split-petersen",
    "stretched-split-petersen",
    "clawfree-split-petersen",
    "complete-bipartite",
    "bipartite-minus-matching",
    "clique-star",
    "disjoint-triangles",
    "triangle-star",
    "linear-forest",
    "path",
    "cycle",
    "complete",
)


def _iter_records(path: str):
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line:
            yield line


def _per_record(args, fn) -> int:
    status = 0
    for line in _iter_records(args.file):
        try:
            g = parse_graph6(line)
            print(json.dumps(fn(g)))
        except GallaiError as exc:
            print(json.dumps({"graph6": line, "error": str(exc)}))
            status = 1
    return status


def _cmd_value(args) -> int:
    if args.command == "lpt":
        def fn(g):
            value, witness = lpt_exact(g)
            return {"n": g.n, "value": value, "witness": sorted(witness)}
    elif args.command == "lct":
        def fn(g):
            value, witness = lct_exact(g)
            return {"n": g.n, "value": value, "witness": sorted(witness)}
    else:
        def fn(g):
            witness = gallai_vertices(g)
            return {"n": g.n, "value": len(witness), "witness": sorted(witness)}
    return _per_record(args, fn)


def _cmd_transversal(args) -> int:
    pattern = "path" if args.pattern == "path" else "cycle"

    def fn(g):
        if args.algo == "exact":
            value, witness = (lpt_exact if pattern == "path" else lct_exact)(g)
            return {
                "n": g.n,
                "pattern": pattern,
                "algo": "exact",
                "size": value,
                "witness": sorted(witness),
            }
        epsilon = Fraction(args.epsilon) if args.epsilon else None
        run = run_sublinear_transversal(g, pattern, epsilon)
        return {
            "n": g.n,
            "pattern": pattern,
            "algo": "theorem1",
            "size": len(run.transversal),
            "witness": sorted(run.transversal),
            "steps": list(run.steps),
            "diagnostics": list(run.diagnostics),
            "epsilon": run.epsilon,
        }

    return _per_record(args, fn)


def _cmd_verify(args) -> int:
    params: dict = {}
    for item in args.param or ():
        key, _, value = item.partition("=")
        params[key] = int(value) if value.isdigit() else value
    filters = tuple(f for chunk in (args.filter or ()) for f in chunk.split(","))
    report = run_campaign(
        args.corpus,
        CheckSpec(args.check, params),
        filters,
        jobs=args.jobs,
        budget_ms=args.budget_ms,
    )
    if args.out:
        report.write_json(args.out)
    if args.csv:
        report.write_csv(args.csv)
    summary = {
        "check": report.check,
        "corpus": report.corpus,
        "totals": report.totals,
        "wall_clock_sec": round(report.wall_clock_sec, 3),
    }
    print(json.dumps(summary))
    return 0 if report.totals["fail"] == 0 else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gallai",
        description="Exact longest-path/longest-cycle transversal toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="emit a stock family as graph6")
    p_gen.add_argument("family", choices=FAMILIES)
    p_gen.add_argument("--k", type=int, default=1, help="clique/first-side size")
    p_gen.add_argument("--t", type=int, default=1, help="leaf size / triangle count")
    p_gen.add_argument("--p", type=int, default=2, help="short stretch length")
    p_gen.add_argument("--q", type=int, default=31, help="long stretch length")
    p_gen.add_argument("--count", type=int, default=1, help="order for path/cycle/complete")
    p_gen.add_argument("--sizes", default="1", help="comma-separated path sizes")

    for name, text in (
        ("lpt", "minimum longest-path transversal"),
        ("lct", "minimum longest-cycle transversal"),
        ("gallai", "vertices on every longest path"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")

    p_tr = sub.add_parser("transversal", help="exact or constructive transversal")
    p_tr.add_argument("--pattern", choices=("path", "cycle"), required=True)
    p_tr.add_argument("--algo", choices=("exact", "theorem1"), required=True)
    p_tr.add_argument("--epsilon", help="rational scale override, e.g. 1/8")
    p_tr.add_argument("file")

    p_ver = sub.add_parser("verify", help="run a corpus campaign")
    p_ver.add_argument("--check", required=True)
    p_ver.add_argument("--param", action="append", help="key=value, repeatable")
    p_ver.add_argument(
        "--filter",
        action="append",
        help="comma-separated: connected, kappa>=K, alpha<=C, free=G6",
    )
    p_ver.add_argument("--corpus", required=True)
    p_ver.add_argument("--jobs", type=int, default=1)
    p_ver.add_argument("--budget-ms", type=float, default=None)
    p_ver.add_argument("--out", help="JSON report path")
    p_ver.add_argument("--csv", help="CSV report path")

    sub.add_parser("remark25", help="classify maximum induced linear forests")

    p_scan = sub.add_parser(
        "scan", help="scan a corpus for connected forbidden-free graphs with no Gallai vertex"
    )
    p_scan.add_argument("--forbidden", required=True, help="graph6 of a linear forest")
    p_scan.add_argument("--corpus", required=True)
    p_scan.add_argument("--jobs", type=int, default=1)
    p_scan.add_argument("--budget-ms", type=float, default=None)
    p_scan.add_argument("--out", help="JSON report path")

    args = parser.parse_args(argv)

    if args.command == "gen":
        for g in _gen_graph(args):
            sys.stdout.write(to_graph6(g).decode() + "\n")
        return 0
    if args.command in ("lpt", "lct", "gallai"):
        return _cmd_value(args)
    if args.command == "transversal":
        return _cmd_transversal(args)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "remark25":
        print(json.dumps(max_induced_linear_forests()))
        return 0
    if args.command == "scan":
        report = gallai_counterexample_scan(
            args.corpus,
            parse_graph6(args.forbidden),
            jobs=args.jobs,
            budget_ms=args.budget_ms,
        )
        if args.out:
            report.write_json(args.out)
        hits = [r.graph6 for r in report.failures()]
        print(json.dumps({"hits": hits, "totals": report.totals}))
        return 0 if not hits else 2
    raise AssertionError("unhandled command")


if __name__ == "__main__":
    raise SystemExit(main())
