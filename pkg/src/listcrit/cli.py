"""Command line entry point: ``listcrit <subcommand> ...``.

Exit codes: 0 success, 1 uncolourable / not critical / failed check,
2 usage or input error, 3 budget exhausted (partial results written).
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import fans
from .coloring import Subgraph, is_T_critical, read_lists, read_precoloring, solve_extension, verify_certificate
from .enumerator import Budget, Enumerator, exact_criticality_over_lists, is_near_triangulation
from .plane_graph import ParseError, outer_cycle, read_plg, write_plg
from .scattering import albertson_check, compute_D, scatter_threshold
from .weights import check_prepathw, check_preouf, compute_weight

OK, FAIL, USAGE, BUDGET = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _vertices(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def _json(obj) -> None:
    print(json.dumps(obj, indent=1, sort_keys=True))


# subcommands ------------------------------------------------------------------

def cmd_color(args) -> int:
    g = read_plg(_read(args.graph))
    lists = read_lists(_read(args.lists))
    fixed = read_precoloring(_read(args.precolor)) if args.precolor else None
    for v, c in (fixed or {}).items():
        lists[v] = frozenset([c])
    col = solve_extension(g, lists)
    if col is None:
        print("UNSAT")
        return FAIL
    for v in sorted(col):
        print(f"{v}={col[v]}")
    return OK


def _boundary(g, args) -> Subgraph:
    if args.path:
        return Subgraph.path(_vertices(args.path))
    return Subgraph.cycle(outer_cycle(g))


def cmd_critical_check(args) -> int:
    g = read_plg(_read(args.graph))
    t = _boundary(g, args)
    if args.lists:
        lists = read_lists(_read(args.lists))
        colours = set().union(*lists.values()) if lists else set()
        for v in t.vertices:
            lists.setdefault(v, frozenset(colours))
        ok, cert = is_T_critical(g, t, lists)
        out = {
            "critical": ok,
            "missing": [list(d) for d in cert.missing],
            "witnesses": [{"deletion": list(d), "precoloring": {str(v): c for v, c in sorted(phi.items())}}
                          for d, phi in sorted(cert.witnesses.items())],
        }
        if ok:
            out["verified"] = verify_certificate(g, t, lists, cert)
        _json(out)
        return OK if ok else FAIL
    sizes = {v: args.size for v in range(g.n) if v not in t.vertices}
    for item in args.sizes or []:
        v, _, s = item.partition("=")
        sizes[int(v)] = int(s)
    v = exact_criticality_over_lists(g, t, sizes, Budget(seconds=args.budget, max_universe=args.universe).start())
    out = {
        "status": v.status,
        "method": v.method,
        "reason": v.reason,
        "lists": None if v.lists is None else {str(k): sorted(c) for k, c in sorted(v.lists.items())},
    }
    _json(out)
    if v.critical is None:
        return BUDGET
    return OK if v.critical else FAIL


def cmd_enumerate(args) -> int:
    if args.length >= 9 and args.budget is None:
        print("enumerate: --budget is required for length 9 and above", file=sys.stderr)
        return USAGE
    enum = Enumerator(Budget(seconds=args.budget, max_universe=args.universe))
    if args.mode == "path":
        cat = enum.path(args.length)
        entries = cat.entries
    elif args.chordless:
        cat = enum.chordless(args.length)
        # the catalog proper holds the near-triangulations; --all adds the rest
        entries = cat.entries if args.all else cat.near_triangulations()
    else:
        cat = enum.all_cycles(args.length)
        entries = cat.entries
    index = cat.to_json()
    index["entries"] = [e.to_json() for e in entries]
    index["written"] = len(entries)
    index["partial"] = not cat.complete
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, e in enumerate(entries):
            (out / f"g{i:04d}.plg").write_text(write_plg(e.graph))
            index["entries"][i]["file"] = f"g{i:04d}.plg"
        (out / "index.json").write_text(json.dumps(index, indent=1, sort_keys=True) + "\n")
    print(f"length {cat.length} ({cat.mode}{', chordless' if cat.chordless else ''}): "
          f"{len(entries)} entries, {len(cat.survivors)} undecided"
          + ("" if cat.complete else " [partial]"))
    return OK if cat.complete else BUDGET


def cmd_weights(args) -> int:
    g = read_plg(_read(args.graph))
    lists = read_lists(_read(args.lists))
    if args.path:
        p = _vertices(args.path)
        for v in p:
            lists.setdefault(v, frozenset([0]))
        holds, slack, rep = check_prepathw(g, p, lists)
    elif args.plain:
        rep = compute_weight(g, outer_cycle(g), lists)
        holds = True
    else:
        cyc = outer_cycle(g)
        for v in cyc:
            lists.setdefault(v, frozenset([0]))
        holds, slack, rep = check_preouf(g, lists)
    _json(rep.as_dict())
    return OK if holds else FAIL


def cmd_fans(args) -> int:
    if args.spec:
        spec = fans.FanProcessionSpec.parse(args.spec)
        sys.stdout.write(write_plg(fans.build_procession(spec).graph))
        return OK
    bad = 0
    for spec in fans.enumerate_specs(args.max_vertices):
        r = fans.verify_procession_claims(spec)
        proc = fans.build_procession(spec)
        tri = is_near_triangulation(proc.graph)
        status = "ok" if not r.violations and tri else "FAIL"
        bad += status != "ok"
        print(f"{status} {spec} n={proc.graph.n} even={spec.is_even} bad={r.some_bad} "
              f"two={r.two_distinct} max_same_xy={r.max_bad_same_xy}")
        for v in r.violations:
            print("  " + v)
    return OK if bad == 0 else FAIL


def cmd_scatter(args) -> int:
    if args.check:
        g = read_plg(_read(args.check[0]))
        lists = read_lists(_read(args.check[1]))
        rep = albertson_check(g, lists, required_distance=args.distance)
        _json(rep.as_dict())
        return OK if rep.colorable else FAIL
    if args.k is None:
        print(scatter_threshold(args.M))
    else:
        print(compute_D(args.M, args.k))
    return OK


def cmd_verify_suite(args) -> int:
    from .suite import run_suite

    enum = Enumerator(Budget(seconds=args.budget, max_universe=args.universe))
    results = run_suite(quick=args.quick, extended=args.extended, enum=enum,
                        report=lambda r: print(r.line(), flush=True))
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return OK if not failed else FAIL


# parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="listcrit", description="List-colouring criticality toolkit for plane graphs.")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("color", help="colour a PLG/1 graph from LST/1 lists")
    s.add_argument("graph")
    s.add_argument("lists")
    s.add_argument("--precolor", help="file of v=c lines")
    s.set_defaults(fn=cmd_color)

    s = sub.add_parser("critical-check", help="decide criticality for the outer cycle or a path")
    s.add_argument("graph")
    s.add_argument("--lists", help="LST/1 lists; without it, search over lists of the given sizes")
    s.add_argument("--path", help="precoloured path as comma separated vertices (default: outer cycle)")
    s.add_argument("--size", type=int, default=5, help="default list size off the precoloured part")
    s.add_argument("--sizes", nargs="*", help="per-vertex sizes as v=s")
    s.add_argument("--budget", type=float, default=None, help="wall clock seconds")
    s.add_argument("--universe", type=int, default=5, help="largest colour universe searched")
    s.set_defaults(fn=cmd_critical_check)

    s = sub.add_parser("enumerate", help="catalog of critical graphs")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--chordless", action="store_true")
    s.add_argument("--mode", choices=["cycle", "path"], default="cycle")
    s.add_argument("--budget", type=float, default=None, help="wall clock seconds per outer length")
    s.add_argument("--universe", type=int, default=5)
    s.add_argument("--all", action="store_true", help="chordless mode: include graphs with non-triangular faces")
    s.add_argument("--out", help="directory for one PLG/1 file per graph and index.json")
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("weights", help="weight report as JSON")
    s.add_argument("graph")
    s.add_argument("lists")
    s.add_argument("--path", help="evaluate against a precoloured path")
    s.add_argument("--plain", action="store_true", help="only the weight, no inequality")
    s.set_defaults(fn=cmd_weights)

    s = sub.add_parser("fans", help="build or verify fan processions")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--spec", help='e.g. "fan:2,fatfan:2"')
    g.add_argument("--verify", action="store_true")
    s.add_argument("--max-vertices", type=int, default=12)
    s.set_defaults(fn=cmd_fans)

    s = sub.add_parser("scatter", help="distance constants and the scattered-precolouring check")
    s.add_argument("--M", type=int, default=2)
    s.add_argument("--k", type=int)
    s.add_argument("--check", nargs=2, metavar=("GRAPH", "LISTS"))
    s.add_argument("--distance", type=int, default=None, help="required pairwise distance for --check")
    s.set_defaults(fn=cmd_scatter)

    s = sub.add_parser("verify-suite", help="run every acceptance check")
    s.add_argument("--quick", action="store_true", help="smaller trial counts, lengths up to 7")
    s.add_argument("--extended", action="store_true", help="also attempt length 9")
    s.add_argument("--budget", type=float, default=None)
    s.add_argument("--universe", type=int, default=5)
    s.set_defaults(fn=cmd_verify_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return USAGE
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
