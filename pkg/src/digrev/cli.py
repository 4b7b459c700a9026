"""Command-line front end.

Exit codes: 0 success, 1 domain error (bad input, limits, internal), 2
usage error.  Errors go to stderr as single-line JSON.  Every command is
deterministic: identical argv and seed produce identical stdout bytes
(timing, which varies, is reported on stderr).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Sequence

from . import connectivity, dichromatic, graph, reversion, structural, suites
from ._backend import BACKEND
from .errors import DigrevError, InputError, InternalError, ResourceLimitError, ValidationError
from .graph import Digraph
from .limits import default_limits


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: A003 - argparse API
        print(json.dumps({"error": "usage", "message": message}), file=sys.stderr)
        raise SystemExit(2)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _read_digraph(path: str) -> Digraph:
    return graph.from_json(_read_text(path))


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _digraph_obj(d: Digraph) -> dict:
    return {
        "vertices": list(d.vertices),
        "edges": [{"id": e, "tail": t, "head": h} for e, (t, h) in sorted(d.edges.items())],
    }


def _parse_order(raw: str | None, d: Digraph) -> tuple[str, ...] | None:
    if raw is None:
        return None
    order = tuple(part for part in raw.split(","))
    if sorted(order) != list(d.vertices):
        raise InputError("--order must list every vertex exactly once, comma-separated")
    return order


def _sequence_obj(seq: reversion.ReversionSequence) -> list[list[int]]:
    return seq.to_edge_lists()


def _cap_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-vertices", type=int, default=None, help="override the vertex cap for this command")
    p.add_argument("--max-edges", type=int, default=None, help="override the edge cap for this command")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="digrev", description="Directed-multigraph cycle-reversal toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a fixture digraph as JSON")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--ladder", type=int, metavar="N")
    grp.add_argument("--random", nargs=2, type=int, metavar=("N", "M"))
    grp.add_argument("--tournament", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("convert", help="re-serialize a digraph as canonical JSON or DOT")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "dot"), default="json")

    p = sub.add_parser("chi", help="exact dichromatic number and witness coloring")
    p.add_argument("input")
    _cap_args(p)

    p = sub.add_parser("reduce", help="reverse violating cycles until a k=2 order certificate passes")
    p.add_argument("input")
    p.add_argument("--order", default=None, help="comma-separated vertex order (default: sorted labels)")

    p = sub.add_parser("cert-check", help="check an order certificate")
    p.add_argument("input")
    p.add_argument("--order", required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("cert-find", help="search for a passing order certificate")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    _cap_args(p)

    p = sub.add_parser("lambda", help="local edge-connectivity lambda(u, v)")
    p.add_argument("input")
    p.add_argument("source")
    p.add_argument("target")

    p = sub.add_parser("menger", help="maximum edge-disjoint path system with orthogonal cut")
    p.add_argument("input")
    p.add_argument("source")
    p.add_argument("target")

    p = sub.add_parser("flip-sep", help="reverse a Menger system and verify separation")
    p.add_argument("input")
    p.add_argument("source")
    p.add_argument("target")

    p = sub.add_parser("reach", help="find an edge-disjoint cycle sequence from one orientation to another")
    p.add_argument("base")
    p.add_argument("target")

    p = sub.add_parser("canon", help="canonicalize a reversion sequence into edge-disjoint cycles")
    p.add_argument("input")
    p.add_argument("sequence")

    p = sub.add_parser("flip-path", help="staged flip of a path via return paths")
    p.add_argument("input")
    p.add_argument("spec", help='JSON file: {"path": [ids], "returns": [[ids], ...]}')

    p = sub.add_parser("two-chain", help="two-chain form of a tournament")
    p.add_argument("input")

    p = sub.add_parser("oracle", help="reachability classes over all reorientations")
    p.add_argument("input")
    _cap_args(p)

    p = sub.add_parser("batch-verify", help="run a seeded property suite")
    p.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    p.add_argument("--n", type=int, default=100, help="instance budget for random suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--mutate", action="store_true", help="negative control: corrupt each check")

    p = sub.add_parser("backend", help="report which kernel backend is active")

    return parser


def _path_from_obj(d: Digraph, edge_ids, what: str) -> graph.DirectedPath:
    if not isinstance(edge_ids, list) or not edge_ids or not all(isinstance(e, int) for e in edge_ids):
        raise InputError(f"{what}: expected a nonempty list of integer edge ids")
    ids = tuple(edge_ids)
    src = d.tail(ids[0])
    dst = d.head(ids[-1])
    path = graph.DirectedPath(ids, src, dst)
    graph.path_vertex_sequence(d, path)
    return path


def _run(args: argparse.Namespace) -> int:
    cmd = args.command

    if cmd == "gen":
        if args.ladder is not None:
            d = graph.gen_ladder(args.ladder)
        elif args.random is not None:
            d = graph.gen_random(args.random[0], args.random[1], args.seed)
        else:
            d = graph.gen_tournament(args.tournament, args.seed)
        sys.stdout.write(graph.to_json(d))
        return 0

    if cmd == "convert":
        d = _read_digraph(args.input)
        sys.stdout.write(graph.to_dot(d) if args.format == "dot" else graph.to_json(d))
        return 0

    if cmd == "chi":
        d = _read_digraph(args.input)
        value, coloring = dichromatic.chi(d, limit=args.max_vertices)
        _emit({"chi": value, "coloring": coloring.assignment})
        return 0

    if cmd == "reduce":
        d = _read_digraph(args.input)
        order = _parse_order(args.order, d) or d.vertices
        result = dichromatic.reduce_dichromatic(d, order)
        _emit(
            {
                "order": list(order),
                "sequence": _sequence_obj(result.sequence),
                "iterations": len(result.sequence),
                "forward_counts": list(result.forward_counts),
                "coloring": result.coloring.assignment,
                "final": _digraph_obj(result.final),
            }
        )
        return 0

    if cmd == "cert-check":
        d = _read_digraph(args.input)
        order = _parse_order(args.order, d)
        assert order is not None
        ok, violating = dichromatic.check_order_certificate(d, dichromatic.OrderCertificate(order, args.k))
        _emit({"ok": ok, "violating_cycle": list(violating.edges) if violating else None})
        return 0

    if cmd == "cert-find":
        d = _read_digraph(args.input)
        cert = dichromatic.find_order_certificate(d, args.k, limit=args.max_vertices)
        if cert is None:
            _emit({"found": False, "k": args.k, "order": None})
        else:
            _emit({"found": True, "k": args.k, "order": list(cert.order)})
        return 0

    if cmd == "lambda":
        d = _read_digraph(args.input)
        value = connectivity.edge_connectivity(d, args.source, args.target)
        _emit({"source": args.source, "target": args.target, "lambda": value})
        return 0

    if cmd == "menger":
        d = _read_digraph(args.input)
        system = connectivity.menger_system(d, args.source, args.target)
        assert system.cut is not None
        _emit(
            {
                "source": system.source,
                "target": system.target,
                "lambda": len(system.paths),
                "paths": [list(p.edges) for p in system.paths],
                "cut": sorted(system.cut.out_edges),
                "w_side": sorted(system.cut.side),
            }
        )
        return 0

    if cmd == "flip-sep":
        d = _read_digraph(args.input)
        flipped, report = connectivity.flip_separation(d, args.source, args.target)
        _emit(
            {
                "report": {
                    "lambda": report.lambda_value,
                    "w_side": sorted(report.w_side),
                    "cut": sorted(report.cut_edges),
                    "paths": [list(p) for p in report.path_edges],
                    "reversed_edges": sorted(report.reversed_edges),
                    "separated": report.separated,
                    "sequence_realizable": report.sequence_realizable,
                },
                "final": _digraph_obj(flipped),
            }
        )
        return 0

    if cmd == "reach":
        base = _read_digraph(args.base)
        target = _read_digraph(args.target)
        seq = reversion.reachable(base, target)
        if seq is None:
            _emit({"reachable": False, "sequence": None})
        else:
            _emit({"reachable": True, "sequence": _sequence_obj(seq)})
        return 0

    if cmd == "canon":
        d = _read_digraph(args.input)
        seq = reversion.sequence_from_json(_read_text(args.sequence))
        bad = reversion.validate(d, seq)
        if bad is not None:
            raise ValidationError(bad, f"sequence invalid at index {bad}")
        canon = reversion.canonicalize(d, seq)
        _emit(_sequence_obj(canon))
        return 0

    if cmd == "flip-path":
        d = _read_digraph(args.input)
        spec = json.loads(_read_text(args.spec))
        if not isinstance(spec, dict) or "path" not in spec or "returns" not in spec:
            raise InputError('flip-path spec must be {"path": [ids], "returns": [[ids], ...]}')
        p = _path_from_obj(d, spec["path"], "path")
        qs = [_path_from_obj(d, q, f"returns[{i}]") for i, q in enumerate(spec["returns"])]
        staged = structural.flip_path_staged(d, p, qs)
        _emit(
            {
                "sequence": _sequence_obj(staged.sequence),
                "touch_counts": {str(e): c for e, c in sorted(staged.touch_counts.items())},
                "net_reversed": sorted(reversion.difference(d, staged.sequence).reversed_edges),
            }
        )
        return 0

    if cmd == "two-chain":
        t = _read_digraph(args.input)
        result = structural.tournament_two_chain(t)
        _emit(
            {
                "order": list(result.order),
                "sequence": _sequence_obj(result.sequence),
                "final": _digraph_obj(result.final),
            }
        )
        return 0

    if cmd == "oracle":
        d = _read_digraph(args.input)
        oracle = structural.orientation_space_oracle(d, max_edges=args.max_edges)
        _emit(
            {
                "edge_order": list(oracle.edge_order),
                "classes": [list(members) for members in oracle.classes],
            }
        )
        return 0

    if cmd == "batch-verify":
        report = suites.run_suite(
            args.suite, count=args.n, seed=args.seed, exhaustive=args.exhaustive, mutate=args.mutate
        )
        _emit(report.to_json_obj())
        print(json.dumps({"wall_time_s": round(report.seconds, 3)}), file=sys.stderr)
        return 0

    if cmd == "backend":
        _emit({"backend": BACKEND, "limits": dataclasses.asdict(default_limits())})
        return 0

    raise InputError(f"unknown command {cmd!r}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except json.JSONDecodeError as exc:
        print(
            json.dumps({"error": "parse", "message": exc.msg, "line": exc.lineno, "column": exc.colno}),
            file=sys.stderr,
        )
        return 1
    except InputError as exc:
        print(json.dumps({"error": "input", "message": str(exc)}), file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(json.dumps({"error": "limit", "message": str(exc)}), file=sys.stderr)
        return 1
    except InternalError as exc:
        print(json.dumps({"error": "internal", "message": str(exc)}), file=sys.stderr)
        return 1
    except DigrevError as exc:
        print(json.dumps({"error": "domain", "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
