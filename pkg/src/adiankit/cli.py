"""Command-line surface.

Exit codes: 0 for success or a true verdict, 1 for a false verdict (not
Adian, invalid diagram, rejected certificate), 2 for usage, I/O, or schema
errors.  stdout carries results (``--json`` switches to structured output);
stderr carries diagnostics.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .diagram import (
    boundary_word,
    diagram_from_json,
    diagram_to_json,
    random_diagram,
    render_dot,
    validate,
)
from .errors import AdianKitError, EmptyBoundaryError, SchemaError
from .munn import format_word, free_reduce, is_dyck, parse_word
from .presentation import is_adian, left_graph, parse_presentation, right_graph
from .witness import (
    certificate_from_json,
    certificate_to_json,
    verify_with_trace,
    witness_idempotent,
)

__all__ = ["main"]


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(args, human: str, doc: dict) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(_dump_json(doc))
    else:
        print(human)


def _side_graph_doc(graph) -> dict:
    return {
        "vertices": sorted(graph.vertices),
        "edges": [{"ends": list(e.ends), "relation": e.relation} for e in graph.edges],
    }


def _cmd_adian_check(args) -> int:
    p = parse_presentation(_read(args.presentation))
    verdict = is_adian(p)
    doc: dict = {"verdict": "adian" if verdict.adian else "not_adian"}
    lines = ["adian" if verdict.adian else "not adian"]
    if verdict.witness is not None:
        doc["witness"] = {
            "graph": verdict.witness.graph,
            "edges": [
                {"ends": list(e.ends), "relation": e.relation} for e in verdict.witness.edges
            ],
        }
        lines.append(f"witness: {verdict.witness.describe()}")
    if args.graphs:
        doc["left_graph"] = _side_graph_doc(left_graph(p))
        doc["right_graph"] = _side_graph_doc(right_graph(p))
        lines.append(f"left graph: {doc['left_graph']}")
        lines.append(f"right graph: {doc['right_graph']}")
    _emit(args, "\n".join(lines), doc)
    return 0 if verdict.adian else 1


def _cmd_diagram_validate(args) -> int:
    d = diagram_from_json(_read(args.diagram))
    report = validate(d)
    doc = {
        "ok": report.ok,
        "violations": [{"code": v.code, "message": v.message} for v in report.violations],
    }
    lines = ["ok"] if report.ok else [f"{v.code} violation: {v.message}" for v in report.violations]
    _emit(args, "\n".join(lines), doc)
    return 0 if report.ok else 1


def _cmd_diagram_render(args) -> int:
    d = diagram_from_json(_read(args.diagram))
    report = validate(d)
    if not report.ok:
        print(f"error: diagram invalid: {report.violations[0]}", file=sys.stderr)
        return 1
    _write(args.output, render_dot(d))
    return 0


def _cmd_diagram_random(args) -> int:
    p = parse_presentation(_read(args.presentation))
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("ADIAN_KIT_SEED", "0"))
    d = random_diagram(p, args.cells, seed)
    _write(args.output, _dump_json(diagram_to_json(d)))
    return 0


def _cmd_witness_generate(args) -> int:
    d = diagram_from_json(_read(args.diagram))
    if not is_adian(d.presentation):
        print("error: pipeline requires Adian input presentation", file=sys.stderr)
        return 2
    report = validate(d)
    if not report.ok:
        print(f"rejected: diagram invalid: {report.violations[0]}", file=sys.stderr)
        return 1
    try:
        result = witness_idempotent(d)
    except EmptyBoundaryError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _write(args.output, _dump_json(certificate_to_json(result.certificate)))
    if args.json:
        stats = result.statistics
        sys.stderr.write(
            _dump_json(
                {
                    "subject": format_word(result.certificate.subject),
                    "steps": dict(stats.step_counts),
                    "depth": stats.depth,
                    "leaves": stats.leaves,
                }
            )
        )
    return 0


def _cmd_witness_verify(args) -> int:
    cert = certificate_from_json(_read(args.certificate))
    p = parse_presentation(_read(args.presentation))
    ok, locus = verify_with_trace(cert, p)
    doc = {"verdict": "accepted" if ok else "rejected"}
    if locus is not None:
        doc["locus"] = locus
    _emit(args, "accepted" if ok else f"rejected at {locus}", doc)
    return 0 if ok else 1


def _cmd_munn_reduce(args) -> int:
    word = parse_word(args.word)
    reduced = free_reduce(word)
    _emit(args, format_word(reduced), {"reduced": format_word(reduced)})
    return 0


def _cmd_munn_dyck(args) -> int:
    word = parse_word(args.word)
    verdict = is_dyck(word)
    _emit(args, "true" if verdict else "false", {"dyck": verdict})
    return 0 if verdict else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adiankit",
        description="Adian presentations, van Kampen diagrams, and idempotency certificates.",
    )
    groups = parser.add_subparsers(dest="group", required=True)

    adian = groups.add_parser("adian", help="presentation checks").add_subparsers(
        dest="command", required=True
    )
    check = adian.add_parser("check", help="decide the Adian (cycle-free) condition")
    check.add_argument("presentation", help="presentation JSON file")
    check.add_argument("--graphs", action="store_true", help="also dump both side graphs")
    check.add_argument("--json", action="store_true")
    check.set_defaults(func=_cmd_adian_check)

    diagram = groups.add_parser("diagram", help="diagram operations").add_subparsers(
        dest="command", required=True
    )
    dv = diagram.add_parser("validate", help="run every diagram invariant")
    dv.add_argument("diagram", help="diagram JSON file")
    dv.add_argument("--json", action="store_true")
    dv.set_defaults(func=_cmd_diagram_validate)
    dr = diagram.add_parser("render", help="emit DOT text")
    dr.add_argument("diagram", help="diagram JSON file")
    dr.add_argument("-o", "--output", default=None)
    dr.set_defaults(func=_cmd_diagram_render)
    dn = diagram.add_parser("random", help="generate a seeded random diagram")
    dn.add_argument("presentation", help="presentation JSON file")
    dn.add_argument("--cells", type=int, required=True)
    dn.add_argument("--seed", type=int, default=None, help="default: $ADIAN_KIT_SEED or 0")
    dn.add_argument("-o", "--output", default=None)
    dn.set_defaults(func=_cmd_diagram_random)

    witness = groups.add_parser("witness", help="idempotency certificates").add_subparsers(
        dest="command", required=True
    )
    wg = witness.add_parser("generate", help="produce a certificate for a diagram's boundary word")
    wg.add_argument("diagram", help="diagram JSON file")
    wg.add_argument("-o", "--output", default=None)
    wg.add_argument("--json", action="store_true", help="also print statistics to stderr")
    wg.set_defaults(func=_cmd_witness_generate)
    wv = witness.add_parser("verify", help="independently verify a certificate")
    wv.add_argument("certificate", help="certificate JSON file")
    wv.add_argument("presentation", help="presentation JSON file")
    wv.add_argument("--json", action="store_true")
    wv.set_defaults(func=_cmd_witness_verify)

    munn = groups.add_parser("munn", help="free-inverse-semigroup utilities").add_subparsers(
        dest="command", required=True
    )
    mr = munn.add_parser("reduce", help="freely reduce a word")
    mr.add_argument("word", help="word in textual form, e.g. \"a b' a\"")
    mr.add_argument("--json", action="store_true")
    mr.set_defaults(func=_cmd_munn_reduce)
    md = munn.add_parser("dyck", help="test whether a word freely reduces to the empty word")
    md.add_argument("word")
    md.add_argument("--json", action="store_true")
    md.set_defaults(func=_cmd_munn_dyck)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AdianKitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
