"""Command-line interface.

Usage::

    arccomplex certify 'P:m=6;punctured=0;colours=BRBRBR'
    arccomplex shell 'P:m=4;punctured=1;colours=BRBR' -o order.txt
    arccomplex check-shelling 'P:m=6;punctured=0;colours=BBBBBB' --full order.txt
    arccomplex sweep --convex 4..8 --punctured 2..5

Every subcommand works on the permitted subcomplex unless ``--full`` is
given.  Exit status is 0 on success, 1 when a verification fails and 2 on
bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .decorated import decorated_arcs, parse_decorated, to_bicoloured, translate_arc, verify_isomorphism
from .polygon import (
    enumerate_arcs,
    enumerate_triangulations,
    extend_to_triangulation,
    is_permitted,
    parse_arcs,
    parse_spec,
)
from .render import render_svg
from .shelling import (
    certify,
    check_wilson_property,
    default_budget,
    dumps_order,
    greedy_shelling,
    loads_order,
    shell_coloured_convex,
    shell_coloured_punctured,
    verify_shelling,
)
from .simplicial import (
    boundary_complex,
    build_complex,
    classify_codim1,
    dual_graph_dot,
    dumps_complex,
    dumps_complex_json,
    euler_characteristic,
    f_vector,
    flip_graph_stats,
    is_pseudomanifold_with_boundary,
    strongly_connected,
)
from .sweep import SweepConfig, format_table, run_sweep


class Failure(Exception):
    """A verification failed; the message is the witness."""


def _permitted(args) -> bool:
    return not args.full


def cmd_arcs(args) -> str:
    spec = parse_spec(args.spec)
    arcs = enumerate_arcs(spec, _permitted(args))
    return "".join(f"{a}\n" for a in arcs)


def cmd_triangulations(args) -> str:
    spec = parse_spec(args.spec)
    return "".join(f"{t}\n" for t in enumerate_triangulations(spec, _permitted(args)))


def cmd_complex(args) -> str:
    spec = parse_spec(args.spec)
    c = build_complex(spec, _permitted(args))
    if args.format == "text":
        return dumps_complex(c)
    if args.format == "json":
        return dumps_complex_json(c)
    pm = is_pseudomanifold_with_boundary(c)
    codim1 = classify_codim1(c) if c.is_pure else None
    stats = flip_graph_stats(c) if c.is_pure else None
    lines = [
        f"polygon          {spec}",
        f"complex          {'permitted subcomplex' if _permitted(args) else 'full arc complex'}",
        f"dimension        {c.dim}",
        f"pure             {'yes' if c.is_pure else 'no'}",
        f"vertices         {len(c.vertices)}",
        f"maximal faces    {len(c.facets)}",
        f"f-vector         {f_vector(c)}",
        f"euler char.      {euler_characteristic(c)}",
        f"strongly conn.   {'yes' if c.is_pure and strongly_connected(c) else 'no'}",
        f"pseudo-manifold  {'yes' if pm.ok else 'no: ' + str(pm.witness)}",
    ]
    if codim1 is not None:
        lines.append(
            f"codim-1 faces    {len(codim1.interior)} interior, {len(codim1.boundary)} boundary, "
            f"{len(codim1.violations)} violations"
        )
    if stats is not None:
        lines.append(f"flip graph       {stats.vertices} vertices, {stats.edges} edges, diameter {stats.diameter}")
    return "\n".join(lines) + "\n"


def cmd_boundary(args) -> str:
    spec = parse_spec(args.spec)
    b = boundary_complex(build_complex(spec, _permitted(args)))
    return dumps_complex_json(b) if args.format == "json" else dumps_complex(b)


def cmd_flipgraph(args) -> str:
    spec = parse_spec(args.spec)
    return dual_graph_dot(build_complex(spec, _permitted(args)))


def cmd_shell(args) -> str:
    spec = parse_spec(args.spec)
    print(f"seed={args.seed}", file=sys.stderr)
    if args.greedy or (args.full and spec.punctured):
        order = greedy_shelling(build_complex(spec, _permitted(args)), budget=args.budget, seed=args.seed)
        if order is None:
            raise Failure("greedy search found no shelling within its budget")
    else:
        target = spec if _permitted(args) else spec.all_blue()
        build = shell_coloured_punctured if spec.punctured else shell_coloured_convex
        order = build(target, budget=args.budget, seed=args.seed)
        if order.repair:
            print(f"repair: {order.repair}", file=sys.stderr)
    return dumps_order(order)


def cmd_check_shelling(args) -> str:
    spec = parse_spec(args.spec)
    c = build_complex(spec, _permitted(args))
    order = loads_order(Path(args.order).read_text(), c)
    direct = verify_shelling(order)
    wilson = check_wilson_property(order)
    lines = [
        f"shelling condition  {'holds' if direct.ok else f'fails at k={direct.failing_index}'}",
        f"pairwise property   {'holds' if wilson.ok else f'fails at (j,k)={wilson.failing_pair}'}",
    ]
    text = "\n".join(lines) + "\n"
    if not (direct.ok and wilson.ok):
        raise Failure(text)
    return text


def cmd_certify(args) -> str:
    spec = parse_spec(args.spec)
    cert = certify(spec, _permitted(args), budget=args.budget, seed=args.seed)
    if args.json:
        doc = cert.to_dict()
        doc["seed"] = args.seed
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = cert.report() + f"  seed               {args.seed}\n"
    if cert.verdict == "inconclusive":
        raise Failure(text)
    return text


def cmd_bridge(args) -> str:
    p = parse_decorated(args.polygon)
    spec = to_bicoloured(p)
    lines = [f"{p} -> {spec}"]
    for a in decorated_arcs(p):
        lines.append(f"  {str(a):<14} -> {translate_arc(p, a)}")
    report = verify_isomorphism(p)
    lines.append(
        f"isomorphism {'holds' if report.ok else 'FAILS: ' + str(report.reason)}: "
        f"{report.decorated_vertices} arcs, {report.decorated_facets} maximal faces, dimension {report.dimension}"
    )
    if report.note:
        lines.append(f"note: {report.note}")
    if args.certify:
        lines.append(certify(spec, True, budget=args.budget, seed=args.seed).report().rstrip("\n"))
    text = "\n".join(lines) + "\n"
    if not report.ok:
        raise Failure(text)
    return text


def cmd_render(args) -> str:
    spec = parse_spec(args.spec)
    if args.arcs:
        arcs = parse_arcs(args.arcs)
        if _permitted(args) and not all(is_permitted(spec, a) for a in arcs):
            raise ValueError("a rejected arc was given; pass --full to draw it")
        t = extend_to_triangulation(spec, arcs, _permitted(args))
    else:
        t = extend_to_triangulation(spec, [], _permitted(args))
    return render_svg(spec, t.arcs)


def _span(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 4..8, got {text!r}")


def cmd_sweep(args) -> str:
    if args.convex is None and args.punctured is None:
        raise ValueError("give --convex and/or --punctured ranges")
    if args.convex is not None and args.convex[0] < 4:
        raise ValueError("convex polygons need m >= 4")
    if args.punctured is not None and args.punctured[0] < 2:
        raise ValueError("punctured polygons need m >= 2")
    config = SweepConfig(
        convex=args.convex,
        punctured=args.punctured,
        up_to_symmetry=not args.all_colourings,
        include_full=not args.no_full,
        jobs=args.jobs,
        seed=args.seed,
        budget=args.budget,
    )
    rows = run_sweep(config)
    text = format_table(rows, seed=args.seed)
    if not all(r.ok for r in rows):
        raise Failure(text)
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arccomplex", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, spec=True):
        p = sub.add_parser(name, help=help)
        if spec:
            p.add_argument("spec", help="polygon, e.g. 'P:m=6;punctured=0;colours=BRBRBR'")
            p.add_argument("--full", action="store_true", help="use the full arc complex, ignoring colours")
        p.add_argument("-o", "--output", help="write output to this file instead of stdout")
        p.set_defaults(func=func)
        return p

    def searchable(p):
        p.add_argument("--seed", type=int, default=0, help="seed for the greedy search tie-breaking")
        p.add_argument("--budget", type=int, default=default_budget(), help="node budget for greedy search")

    add("arcs", cmd_arcs, "list arcs")
    add("triangulations", cmd_triangulations, "list triangulations (maximal faces)")
    p = add("complex", cmd_complex, "summarise or serialise the arc complex")
    p.add_argument("--format", choices=("summary", "text", "json"), default="summary")
    p = add("boundary", cmd_boundary, "boundary complex")
    p.add_argument("--format", choices=("text", "json"), default="text")
    add("flipgraph", cmd_flipgraph, "dual graph in DOT format")
    p = add("shell", cmd_shell, "write a shelling order")
    p.add_argument("--greedy", action="store_true", help="search instead of using the recursive construction")
    searchable(p)
    p = add("check-shelling", cmd_check_shelling, "verify an order file with both checkers")
    p.add_argument("order", help="order file")
    p = add("certify", cmd_certify, "ball/sphere certificate")
    p.add_argument("--json", action="store_true")
    searchable(p)
    p = add("bridge", cmd_bridge, "decorated polygon translation and isomorphism check", spec=False)
    p.add_argument("polygon", help="decorated polygon, e.g. 'H:n=3;punctured=0'")
    p.add_argument("--certify", action="store_true", help="also certify the coloured model")
    searchable(p)
    p = add("render", cmd_render, "SVG drawing of a triangulation")
    p.add_argument("--arcs", help="arcs to draw, e.g. 'D(0,2) D(0,3)'; completed to a triangulation")
    p = add("sweep", cmd_sweep, "certify every colouring over ranges of m", spec=False)
    p.add_argument("--convex", type=_span, help="range of m, e.g. 4..8")
    p.add_argument("--punctured", type=_span, help="range of m, e.g. 2..5")
    p.add_argument("--all-colourings", action="store_true", help="do not reduce colourings by dihedral symmetry")
    p.add_argument("--no-full", action="store_true", help="skip the uncoloured full complexes")
    p.add_argument("--jobs", type=int, default=1)
    searchable(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    status = 0
    try:
        text = args.func(args)
    except Failure as exc:
        text, status = str(exc), 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
