"""
Command line front end.

    snakecluster expand surface.json arc.json
    snakecluster count surface.json arc.json
    snakecluster flip surface.json 3

Exit codes: 0 ok, 1 verify mismatch, 2 unreadable input, 3 invalid
triangulation or arc, 4 flip search exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Sequence

import jsonschema

from . import expansion, oracle
from .matching import (MatchingError, boundary_matchings, count_matchings, enumerate_matchings,
                       fold_to_path, height_function, weight, y_monomial_oriented)
from .poly import LaurentPoly, render, to_json
from .snake import build_snake
from .surface import (ArcError, LabelError, TriangulationError, arc_from_json, connecting_arcs,
                      flip, rank_check, topology, triangulation_from_json, validate)

EXIT_MISMATCH, EXIT_PARSE, EXIT_INVALID, EXIT_NOT_FOUND = 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, lines: list[str]):
        super().__init__("\n".join(lines))
        self.code = code
        self.lines = lines


def _schema(name: str) -> dict:
    return json.loads(resources.files("snakecluster.data").joinpath(name).read_text())


def _load(path: str, schema: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_PARSE, [f"{path}: {exc.strerror}"])
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, [f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"])
    validator = jsonschema.Draft202012Validator(_schema(schema))
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        lines = []
        for err in errors:
            where = "/".join(str(p) for p in err.absolute_path) or "<root>"
            lines.append(f"{path}: at {where}: {err.message}")
        raise CliError(EXIT_PARSE, lines)
    return data


def load_surface(path: str):
    data = _load(path, "surface.schema.json")
    T = triangulation_from_json(data)
    problems = validate(T)
    if not problems:
        try:
            topo = topology(T)
        except TriangulationError as exc:
            problems = [str(exc)]
        else:
            if topo.punctures:
                problems.append(f"surface has {topo.punctures} puncture(s); only unpunctured surfaces are supported")
            declared = [data.get(k) for k in ("genus", "boundaries", "marked")]
            if all(v is not None for v in declared):
                problems += rank_check(T, *declared)
                if (topo.genus, topo.boundaries, topo.marked) != tuple(declared):
                    problems.append(f"declared (genus, boundaries, marked) = {tuple(declared)} "
                                    f"but the gluing gives {(topo.genus, topo.boundaries, topo.marked)}")
    if problems:
        raise CliError(EXIT_INVALID, [f"{path}: {p}" for p in problems])
    return T


def load_arc(path: str, T):
    a = arc_from_json(_load(path, "arc.schema.json"))
    try:
        connecting_arcs(T, a)
    except ArcError as exc:
        where = f" (crossing {exc.index})" if exc.index else ""
        raise CliError(EXIT_INVALID, [f"{path}: {exc}{where}"])
    return a


def _mono(n: int, xe, ye) -> str:
    return render(LaurentPoly.monomial(n, xe, ye))


def _fmt_vec(v) -> str:
    return " ".join(str(x) for x in v)


def cmd_expand(args, out):
    T = load_surface(args.surface)
    a = load_arc(args.arc, T)
    route = expansion.expand if args.command == "expand" else expansion.expand_via_subgraphs
    e = route(T, a)
    if args.json:
        json.dump({"laurent": to_json(e.laurent), "denominator": list(e.denominator),
                   "terms": [{"source": list(t.source), "x": list(t.weight), "y": list(t.y)}
                             for t in e.numerator_terms]}, out, sort_keys=True)
        out.write("\n")
        return 0
    out.write(render(e.laurent) + "\n")
    if args.terms:
        for t in e.numerator_terms:
            src = " ".join(map(str, t.source)) or "-"
            out.write(f"  [{src}]  {_mono(T.n, t.weight, t.y)}\n")
    return 0


def cmd_matchings(args, out):
    T = load_surface(args.surface)
    a = load_arc(args.arc, T)
    G = build_snake(T, a)
    Ms = enumerate_matchings(G)
    minus, _ = boundary_matchings(G, Ms)
    rows = []
    for M in Ms:
        h = height_function(G, M, minus)
        rows.append({"edges": sorted(M), "weight": list(weight(G, M)),
                     "y": list(y_monomial_oriented(G, M)),
                     "heights": [h[t.index] for t in G.tiles],
                     "path": list(fold_to_path(G, M).labels)})
    if args.json:
        json.dump({"snake": G.to_json(), "matchings": rows}, out, sort_keys=True)
        out.write("\n")
        return 0
    for r in rows:
        labels = ",".join(str(G.edges[i].label) for i in r["edges"])
        wy = _mono(T.n, r["weight"], r["y"]) or "1"
        out.write(f"{','.join(map(str, r['edges']))}\tlabels {labels}\t{wy}\th {_fmt_vec(r['heights'])}\n")
    return 0


def cmd_fpoly(args, out):
    T = load_surface(args.surface)
    a = load_arc(args.arc, T)
    F = expansion.f_polynomial(T, a)
    out.write((json.dumps(to_json(F), sort_keys=True) if args.json else render(F)) + "\n")
    return 0


def cmd_gvec(args, out):
    T = load_surface(args.surface)
    a = load_arc(args.arc, T)
    g = expansion.g_vector(T, a)
    out.write((json.dumps(list(g)) if args.json else _fmt_vec(g)) + "\n")
    return 0


def cmd_count(args, out):
    T = load_surface(args.surface)
    a = load_arc(args.arc, T)
    out.write(f"{count_matchings(build_snake(T, a))}\n")
    return 0


def cmd_verify(args, out):
    T = load_surface(args.surface)
    a = load_arc(args.arc, T)
    depth = args.max_depth if args.max_depth is not None else a.d + 4
    flips = oracle.find_flip_sequence(T, a, depth)
    if flips is None:
        out.write(f"no flip sequence within depth {depth}; try a larger --max-depth\n")
        return EXIT_NOT_FOUND
    lhs = expansion.expand(T, a).laurent
    _, seed = oracle.run_flips(T, flips)
    rhs = seed.cluster[flips[-1] - 1]
    same = lhs == rhs
    if args.json:
        json.dump({"matching": to_json(lhs), "oracle": to_json(rhs), "flips": flips,
                   "agree": same}, out, sort_keys=True)
        out.write("\n")
    else:
        out.write(f"flips:    {' '.join(map(str, flips))}\n")
        out.write(f"matching: {render(lhs)}\n")
        out.write(f"oracle:   {render(rhs)}\n")
        out.write("OK\n" if same else "MISMATCH\n")
    return 0 if same else EXIT_MISMATCH


def cmd_flip(args, out):
    T = load_surface(args.surface)
    try:
        T2, quad = flip(T, args.k)
    except LabelError as exc:
        raise CliError(EXIT_INVALID, [str(exc)])
    data = {"triangulation": T2.to_json(), "diagonal": quad.diagonal,
            "sides": list(quad.sides), "triangles": list(quad.triangles)}
    out.write(json.dumps(data, sort_keys=True) + "\n")
    return 0


COMMANDS = {
    "expand": (cmd_expand, "Laurent expansion summed over perfect matchings"),
    "subgraph-expand": (cmd_expand, "the same expansion summed over tile subgraphs"),
    "matchings": (cmd_matchings, "list perfect matchings with weights, coefficients, heights"),
    "fpoly": (cmd_fpoly, "F-polynomial"),
    "gvec": (cmd_gvec, "g-vector"),
    "count": (cmd_count, "number of perfect matchings"),
    "verify": (cmd_verify, "compare against seed mutation along a flip sequence"),
    "flip": (cmd_flip, "flip an interior arc and print the new triangulation"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snakecluster",
                                     description="Cluster variables of triangulated surfaces via snake graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("surface", help="surface JSON file")
        if name == "flip":
            p.add_argument("k", type=int, help="label of the interior arc to flip")
            continue
        p.add_argument("arc", help="arc JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if name in ("expand", "subgraph-expand"):
            p.add_argument("--terms", action="store_true", help="also print the term table")
        if name == "verify":
            p.add_argument("--max-depth", type=int, default=None, help="flip search depth (default d+4)")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command][0](args, out)
    except CliError as exc:
        for line in exc.lines:
            err.write(line + "\n")
        return exc.code
    except (MatchingError, expansion.ExpansionError, oracle.LaurentViolation) as exc:
        err.write(f"internal check failed: {exc}\n")
        return 70


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
