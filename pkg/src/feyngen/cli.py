"""Command-line front-end: generate, verify, evaluate and export graph sums.

Exit codes: 0 ok, 1 verification mismatch, 2 usage error, 3 resource limit,
4 invalid model.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .algebra import ONE, Monomial
from .evaluation import ModelError, NPointTable, load_model
from .graphs import format_weight, graph_from_dict, graph_to_dict, to_dot
from .oracle import ResourceLimitError, compare, enumerate_connected, zero_dim_log_z
from .recursion import GenOptions, GraphSum, omega, omega_alt, vertex_bound

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_MODEL = 4

#: Hard safety limit on the internal edge number of a single generated cell.
GENERATION_EDGE_LIMIT = 8

VERIFY_SUITES = ("graph-oracle", "alt-recursion", "sigma")


def parse_externals(text: str) -> Monomial:
    """Comma list of labels; the empty string means vacuum graphs."""
    if not text:
        return ONE
    return Monomial(tuple(part.strip() for part in text.split(",")))


def parse_range(text: str) -> tuple[int, int]:
    """Single integer "N" or inclusive range "A-B"."""
    if "-" in text:
        lo, hi = text.split("-", 1)
        return int(lo), int(hi)
    value = int(text)
    return value, value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="feyngen",
        description="Generate, verify, evaluate and export connected Feynman graphs "
        "with exact symmetry-factor weights.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate weighted connected graphs")
    gen.add_argument("--loops", required=True, help="loop number N or range A-B")
    gen.add_argument("--vertices", help="vertex number N or range A-B "
                     "(default: up to the valence bound when --min-valence is set)")
    gen.add_argument("--externals", default="", help="comma list of external labels")
    gen.add_argument("--min-valence", type=int, default=0,
                     help="keep only graphs whose vertices have at least this valence (>= 3)")
    gen.add_argument("--max-loops", type=int, default=None,
                     help="maximal loop number the run is interested in (enables pruning)")
    gen.add_argument("--format", choices=("text", "json", "dot"), default="text")
    gen.add_argument("--output", default=None, help="output path (default stdout)")
    gen.add_argument("--max-edges", type=int, default=GENERATION_EDGE_LIMIT)
    gen.add_argument("--jobs", type=int, default=1,
                     help="accepted for interface compatibility; evaluation is sequential")

    ver = sub.add_parser("verify", help="run engine-vs-oracle equivalence suites")
    ver.add_argument("--max-edges", type=int, default=3)
    ver.add_argument("--suite", choices=("all",) + VERIFY_SUITES, default="all")
    ver.add_argument("--jobs", type=int, default=1)

    ev = sub.add_parser("evaluate", help="evaluate n-point grades in a finite model")
    ev.add_argument("--model", required=True, help="model JSON path")
    ev.add_argument("--loops", required=True, help="loop number N or range A-B")
    ev.add_argument("--vertices", required=True, help="vertex number N or range A-B")
    ev.add_argument("--externals", default="")
    ev.add_argument("--output", default=None)
    ev.add_argument("--jobs", type=int, default=1)

    exp = sub.add_parser("export", help="convert an exported graph-sum JSON file")
    exp.add_argument("--input", required=True, help="graph-sum JSON path")
    exp.add_argument("--format", choices=("text", "json", "dot"), default="dot")
    exp.add_argument("--output", default=None)
    return parser


def _sorted_graphs(s: GraphSum):
    return sorted(s.items(), key=lambda item: (item[0].edges, item[0].externals))


def _render(graphs, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([graph_to_dict(g, w) for g, w in graphs], sort_keys=True, indent=2) + "\n"
    if fmt == "dot":
        blocks = [to_dot(g, w, name=f"g{idx}") for idx, (g, w) in enumerate(graphs)]
        return "\n".join(blocks) + "\n"
    lines = []
    for g, w in graphs:
        edges = " ".join(f"({a},{b})" for a, b in g.edges) or "-"
        ext = " ".join(f"{lab}->{vtx}" for lab, vtx in g.externals) or "-"
        lines.append(f"{format_weight(w)}  v={g.vertex_count}  edges: {edges}  externals: {ext}")
    return "\n".join(lines) + "\n" if lines else ""


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_generate(args) -> int:
    externals = parse_externals(args.externals)
    l_lo, l_hi = parse_range(args.loops)
    if args.min_valence and args.min_valence < 3:
        print("--min-valence must be 0 or at least 3", file=sys.stderr)
        return EXIT_USAGE
    if args.vertices is not None:
        v_lo, v_hi = parse_range(args.vertices)
    elif args.min_valence:
        bound = vertex_bound(externals.degree, args.max_loops or l_hi, args.min_valence)
        v_lo, v_hi = 1, max(bound, 1)
    else:
        print("--vertices is required unless --min-valence is set", file=sys.stderr)
        return EXIT_USAGE
    opts = GenOptions(
        min_valence=max(args.min_valence - 1, 0),
        max_loops=args.max_loops if args.max_loops is not None else (l_hi if args.min_valence else None),
    )
    collected = []
    for l in range(l_lo, l_hi + 1):
        for v in range(v_lo, v_hi + 1):
            if l + v - 1 > args.max_edges:
                print(f"cell l={l} v={v} exceeds --max-edges {args.max_edges}", file=sys.stderr)
                return EXIT_RESOURCE
            s = omega(l, v, externals, opts).canonical_merge()
            if args.min_valence:
                s = s.restricted(
                    lambda g: all(g.valence(i) >= args.min_valence
                                  for i in range(1, g.vertex_count + 1))
                )
            collected.extend(_sorted_graphs(s))
    _emit(_render(collected, args.format), args.output)
    return EXIT_OK


def _verify_graph_oracle(max_edges: int, report_lines: list[str]) -> bool:
    ok = True
    labels = ("x1", "x2")
    for e in range(0, max_edges + 1):
        for v in range(1, e + 2):
            l = e - v + 1
            for n in range(0, len(labels) + 1):
                m = Monomial(labels[:n])
                result = compare(omega(l, v, m), enumerate_connected(l, v, m, max_edges))
                status = "ok" if result else "MISMATCH"
                report_lines.append(f"graph-oracle l={l} v={v} n={n}: {status}")
                if not result:
                    report_lines.append(result.describe())
                    ok = False
    return ok


def _verify_alt(max_edges: int, report_lines: list[str]) -> bool:
    ok = True
    labels = ("x1", "x2")
    for e in range(1, max_edges + 1):
        for v in range(1, e + 2):
            l = e - v + 1
            for n in range(0, len(labels) + 1):
                m = Monomial(labels[:n])
                result = compare(omega_alt(l, v, m), omega(l, v, m))
                status = "ok" if result else "MISMATCH"
                report_lines.append(f"alt-recursion l={l} v={v} n={n}: {status}")
                if not result:
                    report_lines.append(result.describe())
                    ok = False
    return ok


def _verify_sigma(max_edges: int, report_lines: list[str]) -> bool:
    from .evaluation import Model, sigma_lv

    ok = True
    g = Fraction(1, 2)
    lam = Fraction(3)
    model = Model(
        ("x",),
        {("x", "x"): g},
        vertex_by_degree={3: lam * g**3, 4: lam * g**4},
    )
    series = zero_dim_log_z((3, 4), max_sources=2, max_vertices=max_edges + 1)
    couplings = {3: lam, 4: lam}
    for e in range(0, max_edges + 1):
        for v in range(1, e + 2):
            l = e - v + 1
            for n in range(0, 3):
                m = Monomial(tuple(f"x{i}" for i in range(n)))
                engine = sigma_lv(model, l, v, m)
                expected = series.connected_value(n, l, v, couplings, g)
                result = compare(engine, expected)
                status = "ok" if result else "MISMATCH"
                report_lines.append(f"sigma l={l} v={v} n={n}: {status}")
                if not result:
                    report_lines.append(result.describe())
                    ok = False
    return ok


def cmd_verify(args) -> int:
    suites = VERIFY_SUITES if args.suite == "all" else (args.suite,)
    lines: list[str] = []
    ok = True
    runners = {
        "graph-oracle": _verify_graph_oracle,
        "alt-recursion": _verify_alt,
        "sigma": _verify_sigma,
    }
    for suite in suites:
        ok = runners[suite](args.max_edges, lines) and ok
    print("\n".join(lines))
    print("all suites passed" if ok else "verification FAILED")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_evaluate(args) -> int:
    model = load_model(args.model)
    table = NPointTable(model)
    externals = parse_externals(args.externals)
    l_lo, l_hi = parse_range(args.loops)
    v_lo, v_hi = parse_range(args.vertices)
    lines = []
    for l in range(l_lo, l_hi + 1):
        total = None
        for v in range(v_lo, v_hi + 1):
            value = table.value(l, v, externals)
            total = value if total is None else total + value
            lines.append(f"sigma[l={l},v={v}]({externals}) = {_format_scalar(value)}")
        lines.append(f"sigma[l={l}]({externals}) = {_format_scalar(total)}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _format_scalar(value) -> str:
    if isinstance(value, Fraction):
        return format_weight(value)
    return repr(value)


def cmd_export(args) -> int:
    with open(args.input) as fh:
        docs = json.load(fh)
    graphs = [graph_from_dict(doc) for doc in docs]
    graphs = [(g, w if w is not None else Fraction(1)) for g, w in graphs]
    _emit(_render(graphs, args.format), args.output)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {
        "generate": cmd_generate,
        "verify": cmd_verify,
        "evaluate": cmd_evaluate,
        "export": cmd_export,
    }
    try:
        return handlers[args.command](args)
    except ModelError as exc:
        print(f"invalid model: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
