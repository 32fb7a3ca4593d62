"""Command-line interface.

Every command reads the polynomial (inline text, expression file, or JSON),
builds the requested diagram and ordering, and emits one deterministic JSON
document (DOT for the exporter).  Exit codes: 0 success, 1 completed but a
discrepancy was found, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .chains import build_distinguished_chain, find_chain_start
from .core import Diagram, parse_polynomial
from .coverage import coverage_report
from .errors import NoExtension, PolyadicError
from .export import document_header, export_dot, export_json, to_stable_json
from .measure import (
    dim_lower_bound_check,
    level_mass,
    minimal_mass_bound,
    solve_symmetric_weight,
)
from .probe import probe_depth_pairs
from .verify import verify_all
from .vershik import make_ordering


def _load_polynomial(arg: str):
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            arg = fh.read()
    return parse_polynomial(arg)


def _load_multiplicity(arg: str):
    if arg == "all-ones":
        return "all-ones"
    with open(arg, encoding="utf-8") as fh:
        rows = json.load(fh)
    return {tuple(row["exp"]): int(row["count"]) for row in rows}


def _ordering_spec(args) -> dict:
    arg = args.ordering
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            spec = json.load(fh)
    else:
        spec = {"preset": arg}
    if args.seed is not None and "explicit" not in spec:
        spec["seed"] = args.seed
    return spec


def _build(args) -> Diagram:
    spec = _load_polynomial(args.poly)
    if args.mode == "shape":
        multiplicity = _load_multiplicity(args.multiplicity)
    else:
        multiplicity = "coefficients"
    return Diagram(spec, multiplicity=multiplicity)


def _emit(args, name: str, text: str) -> None:
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(path)
    else:
        sys.stdout.write(text)


def _emit_json(args, name: str, payload: dict) -> None:
    _emit(args, name, to_stable_json(payload))


def _cmd_describe(args) -> int:
    diagram = _build(args)
    doc = document_header(diagram, seed=args.seed)
    doc["arity"] = diagram.arity
    doc["degree"] = diagram.degree
    doc["vertex_counts"] = {
        str(level): diagram.vertex_count(level) for level in range(1, args.levels + 1)
    }
    doc["source_vectors"] = [list(s) for s in diagram.spec.source_vectors]
    _emit_json(args, "describe.json", doc)
    return 0


def _cmd_covered(args) -> int:
    diagram = _build(args)
    report = coverage_report(diagram, args.level)
    doc = document_header(diagram, seed=args.seed)
    doc["report"] = report.to_json()
    doc["covered_count"] = report.covered_count
    doc["uncovered_count"] = report.uncovered_count
    _emit_json(args, "covered.json", doc)
    return 1 if report.discrepancies else 0


def _cmd_chain(args) -> int:
    diagram = _build(args)
    starts = find_chain_start(diagram, args.level)
    target = args.target_len or 2 * diagram.degree + 3
    doc = document_header(diagram, seed=args.seed)
    doc["level"] = args.level
    doc["start_count"] = len(starts)
    doc["starts"] = [
        {
            "v": list(s.v.coords),
            "v_prime": list(s.v_prime.coords),
            "direction": s.direction,
            "shared": list(s.shared.coords),
        }
        for s in starts[:20]
    ]
    if starts:
        s = starts[0]
        try:
            chain = build_distinguished_chain(
                diagram, s.v, s.v_prime, s.shared, s.direction, target
            )
            doc["chain"] = chain.to_json()
        except (NoExtension, PolyadicError) as exc:
            doc["chain_error"] = str(exc)
    _emit_json(args, "chain.json", doc)
    return 0


def _cmd_probe(args) -> int:
    diagram = _build(args)
    ordering = make_ordering(diagram, _ordering_spec(args))
    report = probe_depth_pairs(
        ordering, args.i, args.horizon, min_coord_floor=args.floor, budget=args.budget
    )
    doc = document_header(diagram, ordering=ordering, seed=args.seed)
    doc["report"] = report.to_json()
    _emit_json(args, "probe.json", doc)
    return 1 if report.uncensored_genuine_conflicts else 0


def _cmd_measure(args) -> int:
    diagram = _build(args)
    weight = solve_symmetric_weight(diagram)
    doc = document_header(diagram, seed=args.seed)
    doc["weight"] = weight.to_json()
    rows = []
    bad = False
    for level in range(1, args.levels + 1):
        mass = level_mass(diagram, level, weight)
        bound = minimal_mass_bound(diagram, level, weight)
        low_dims = dim_lower_bound_check(diagram, level)
        ok = bound.ok and abs(mass - 1) <= 1e-9 and not low_dims
        bad = bad or not ok
        rows.append(
            {
                "level": level,
                "total_mass": float(mass),
                "minimal_mass": bound.to_json(),
                "dimension_counterexamples": [list(v.coords) for v, _ in low_dims],
                "ok": ok,
            }
        )
    doc["levels"] = rows
    _emit_json(args, "measure.json", doc)
    return 1 if bad else 0


def _cmd_vershik(args) -> int:
    diagram = _build(args)
    ordering = make_ordering(diagram, _ordering_spec(args))
    doc = document_header(diagram, ordering=ordering, seed=args.seed)
    doc["level"] = args.level
    doc["vertices"] = [
        {
            "coords": list(v.coords),
            "dimension": diagram.dimension(v),
            "indegree": ordering.indegree(v),
            "minimal_path": ordering.minimal_path(v).to_json(),
            "maximal_path": ordering.maximal_path(v).to_json(),
        }
        for v in diagram.vertices(args.level)
    ]
    _emit_json(args, "vershik.json", doc)
    return 0


def _cmd_export(args) -> int:
    diagram = _build(args)
    if args.format == "dot":
        _emit(args, "diagram.dot", export_dot(diagram, args.levels, args.parallel_edges))
    else:
        _emit_json(args, "diagram.json", export_json(diagram, args.levels))
    return 0


def _cmd_verify_all(args) -> int:
    diagram = _build(args)
    result = verify_all(diagram, args.levels)
    doc = document_header(diagram, seed=args.seed)
    doc["result"] = result.to_json()
    _emit_json(args, "verify.json", doc)
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyadic",
        description="Polynomial-shape diagrams: lattices, orderings, probes, measures.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poly", required=True, help="polynomial text, file, or JSON")
    common.add_argument("--mode", choices=("polynomial", "shape"), default="polynomial")
    common.add_argument(
        "--multiplicity",
        default="all-ones",
        help="shape mode only: 'all-ones' or a JSON table file",
    )
    common.add_argument("--ordering", default="source-lex", help="preset name or JSON file")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=int, default=10**6, help="tower size budget")
    common.add_argument("--out", default=None, help="directory for output files")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", parents=[common], help="polynomial and vertex counts")
    p.add_argument("--levels", type=int, default=5)
    p.set_defaults(fn=_cmd_describe)

    p = sub.add_parser("covered", parents=[common], help="coverage report for one level")
    p.add_argument("--level", type=int, required=True)
    p.set_defaults(fn=_cmd_covered)

    p = sub.add_parser("chain", parents=[common], help="chain starts and one extension")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--target-len", type=int, default=None, help="splitting vertices to reach")
    p.set_defaults(fn=_cmd_chain)

    p = sub.add_parser("probe", parents=[common], help="depth-i conflict search")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--floor", type=int, default=0, help="minimum terminal min-coordinate")
    p.set_defaults(fn=_cmd_probe)

    p = sub.add_parser("measure", parents=[common], help="weights and mass bounds")
    p.add_argument("--levels", type=int, default=6)
    p.set_defaults(fn=_cmd_measure)

    p = sub.add_parser("vershik", parents=[common], help="towers at one level")
    p.add_argument("--level", type=int, required=True)
    p.set_defaults(fn=_cmd_vershik)

    p = sub.add_parser("export", parents=[common], help="diagram as JSON or DOT")
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--parallel-edges", action="store_true")
    p.set_defaults(fn=_cmd_export)

    p = sub.add_parser("verify-all", parents=[common], help="run every invariant suite")
    p.add_argument("--levels", type=int, default=6)
    p.set_defaults(fn=_cmd_verify_all)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (PolyadicError, OSError, ValueError) as exc:
        # ValueError covers bad preset names and malformed JSON inputs
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
