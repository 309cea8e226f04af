"""Command-line interface: ``fewdist <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from .exactmath.groebner import GroebnerBudget
from .geomcert import GENERAL, MODES, SPHERICAL, describe_value
from .gramgen import CandidateGramMatrix, GenerationLimit, generate_levels
from .rankfilter import candidate_feasible
from .search import SearchParams, default_jobs, full_search


def _emit(rows: list, header: list, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps([dict(zip(header, r)) for r in rows], indent=1) + "\n")
    elif fmt == "csv":
        w = csv.writer(out)
        w.writerow(header)
        w.writerows(rows)
    else:
        widths = [max(len(str(x)) for x in [h] + [r[i] for r in rows]) for i, h in enumerate(header)]
        out.write("  ".join(h.rjust(w) for h, w in zip(header, widths)) + "\n")
        for r in rows:
            out.write("  ".join(str(x).rjust(w) for x, w in zip(r, widths)) + "\n")


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def cmd_count(args) -> int:
    rows = []
    try:
        for level in generate_levels(args.max_n, args.s, args.limit):
            n = level[0].n
            if n >= 2:
                rows.append((n, len(level)))
    except GenerationLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    out, close = _open_out(args.out)
    _emit(rows, ["n", "count"], args.format, out)
    if close:
        out.close()
    return 0


def cmd_gen(args) -> int:
    out, close = _open_out(args.out)
    level = None
    for level in generate_levels(args.n, args.s, args.limit):
        pass
    for g in level:
        out.write(g.to_line() + "\n")
    if close:
        out.close()
    return 0


def _budget(args) -> GroebnerBudget:
    b = GroebnerBudget()
    if args.budget_gb is not None:
        b = GroebnerBudget(max_basis=args.budget_gb, max_degree=b.max_degree, max_pairs=b.max_pairs)
    return b


def cmd_filter(args) -> int:
    if args.dim is None:
        raise SystemExit("filter: --dim is required")
    budget = _budget(args)
    rows = []
    with open(args.input) as fh:
        for line in fh:
            if not line.strip():
                continue
            g = CandidateGramMatrix.from_line(line)
            v = candidate_feasible(g, args.dim, args.mode, budget)
            rows.append((g.to_line(), v.value))
    out, close = _open_out(args.out)
    _emit(rows, ["matrix", "verdict"], args.format, out)
    if close:
        out.close()
    return 0


def _search_report(report, fmt: str) -> str:
    p = report.params
    if fmt == "json":
        data = {
            "params": {"d": p.d, "s": p.s, "mode": p.mode, "max_n": p.max_n, "cutoff": p.cutoff},
            "levels": [vars(c) for c in report.levels],
            "terminal_n": report.terminal_n,
            "terminals": [
                {
                    "matrix": t.matrix.to_line(),
                    "error": t.error,
                    "admissible": [[describe_value(v) for v in a.values] for a in t.admissible],
                    "shadows": [[describe_value(v) for v in a.values] for a in t.shadows],
                }
                for t in report.terminals
            ],
        }
        return json.dumps(data, indent=1) + "\n"
    buf = io.StringIO()
    rows = [(c.n, c.found, c.retained if c.rank_tested else "-") for c in report.levels]
    if fmt == "csv":
        _emit(rows, ["n", "found", "rank_filtered"], "csv", buf)
        return buf.getvalue()
    buf.write(f"search d={p.d} s={p.s} mode={p.mode} cutoff={p.cutoff} max_n={p.max_n}\n")
    _emit(rows, ["n", "found", "rank_filtered"], "text", buf)
    buf.write(f"largest nonempty level: {report.terminal_n}\n")
    for t in report.terminals:
        buf.write(f"\nterminal {t.matrix.to_line()}\n{t.matrix}\n")
        if t.error:
            buf.write(f"  unsolved: {t.error}\n")
        for a in t.admissible:
            buf.write("  admissible: " + ", ".join(describe_value(v) for v in a.values) + "\n")
            if p.mode == GENERAL:
                buf.write("    normalized: " + ", ".join(describe_value(v) for v in a.normalized_by_max()) + "\n")
        for a in t.shadows:
            buf.write("  shadow: " + ", ".join(describe_value(v) for v in a.values) + "\n")
    return buf.getvalue()


def cmd_search(args) -> int:
    if args.dim is None or args.s is None:
        raise SystemExit("search: --dim and --s are required")
    if args.resume and args.out and args.resume != args.out:
        raise SystemExit("search: --resume and --out name different directories")
    kw = {}
    if args.budget_gb is not None:
        kw["max_basis"] = args.budget_gb
    try:
        p = SearchParams(args.dim, args.s, args.mode, args.max_n, args.cutoff, jobs=args.jobs, **kw)
    except ValueError as exc:
        raise SystemExit(f"search: {exc}")
    directory = args.resume or args.out

    def progress(level):
        logging.getLogger("fewdist").info("n=%d found=%d retained=%d", level.n, level.found, len(level.members))

    report = full_search(p, directory, resume=bool(args.resume), solve=not args.no_solve, progress=progress)
    sys.stdout.write(_search_report(report, args.format))
    return 0


def cmd_construct(args) -> int:
    from .construct import construct_cube_set, simplex_orbit

    if args.simplex:
        if args.dim is None:
            raise SystemExit("construct: --dim is required")
        orb = simplex_orbit(args.dim, args.simplex)
        info = {
            "construction": f"simplex orbit {args.simplex}",
            "points": orb.size,
            "affine_dimension": orb.affine_dimension,
            "squared_distances": [str(x) for x in orb.spectrum],
        }
        pts = orb.points.points
    else:
        if args.dim is None or args.s is None:
            raise SystemExit("construct: --dim and --s are required")
        res = construct_cube_set(args.dim, args.s, node_budget=args.budget_clique)
        info = {
            "construction": "cube distances",
            "graph_vertices": len(res.graph),
            "clique": res.clique.size,
            "clique_optimal": res.clique.optimal,
            "points": res.size,
            "squared_distances": [str(x) for x in res.spectrum],
        }
        pts = res.points.points
    out, close = _open_out(args.out)
    if args.format == "json":
        info["coordinates"] = [[str(x) for x in p] for p in pts]
        out.write(json.dumps(info, indent=1) + "\n")
    elif args.format == "csv":
        w = csv.writer(out)
        for p in pts:
            w.writerow([str(x) for x in p])
    else:
        for k, v in info.items():
            out.write(f"{k}: {v}\n")
        for p in pts:
            out.write("  (" + ", ".join(str(x) for x in p) + ")\n")
    if close:
        out.close()
    return 0


def cmd_certify(args) -> int:
    from .fixtures import fixtures

    table = fixtures()
    names = sorted(table) if args.fixture in (None, "all") else [args.fixture]
    unknown = [n for n in names if n not in table]
    if unknown:
        raise SystemExit(f"certify: unknown fixture {unknown[0]}; choose from {', '.join(sorted(table))}")
    status = 0
    out, close = _open_out(args.out)
    for name in names:
        fx = table[name]
        cert = fx.certify()
        if args.format == "text":
            out.write(f"[{name}] ")
        out.write(cert.report("json" if args.format == "json" else "text") + "\n")
        if not cert.realizable:
            status = 1
    if close:
        out.close()
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fewdist", description="Classification and construction of few-distance sets.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dim=False, s=False, mode=False):
        if dim:
            p.add_argument("--dim", type=int)
        if s:
            p.add_argument("--s", type=int)
        if mode:
            p.add_argument("--mode", choices=MODES, default=SPHERICAL)
        p.add_argument("--out", help="output file or directory ('-' for stdout)")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("count", help="number of candidate matrices per order")
    common(p, s=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--limit", type=int, help="abort if a level exceeds this many matrices")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("gen", help="stream canonical matrices of one order")
    common(p, s=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("filter", help="rank feasibility for each matrix in a file")
    common(p, dim=True, mode=True)
    p.add_argument("input", help="file with one matrix record per line")
    p.add_argument("--budget-gb", type=int, help="Groebner basis size limit")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("search", help="level-by-level classification")
    common(p, dim=True, s=True, mode=True)
    p.add_argument("--max-n", type=int)
    p.add_argument("--cutoff", type=int, help="last order at which the rank filter runs")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--budget-gb", type=int, help="Groebner basis size limit")
    p.add_argument("--resume", help="directory of an interrupted search")
    p.add_argument("--no-solve", action="store_true", help="skip solving the terminal matrices")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("construct", help="cube-distance cliques or truncated simplices")
    common(p, dim=True, s=True)
    p.add_argument("--simplex", choices=("2-2", "3-1"), help="truncated simplex orbit instead")
    p.add_argument("--budget-clique", type=int, help="node limit for the clique search")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="certify a named fixture")
    common(p)
    p.add_argument("--fixture", default="all")
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "s", None) is not None and args.s < 1:
        parser.error("--s must be positive")
    if getattr(args, "dim", None) is not None and args.dim < 1:
        parser.error("--dim must be positive")
    if args.command == "construct" and args.simplex and args.s is not None:
        parser.error("--simplex and --s are mutually exclusive")
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            parser.error(exc.code)
        raise


if __name__ == "__main__":
    sys.exit(main())
