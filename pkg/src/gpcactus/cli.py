"""Command-line entry point: ``gp``, ``classify``, ``generate``, ``audit``, ``replay``.

Exit codes: 0 success, 1 usage or input error, 2 solver timeout,
3 counterexample found (audit) or not reproduced (replay).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from gpcactus.audit import TheoremId, Verdict, audit, default_sweep, read_jsonl, summarize, write_jsonl
from gpcactus.cactus import NotACactus, bound_report, cactus_profile
from gpcactus.families import Family, FamilySpec, generate
from gpcactus.graph import Graph, GraphError, parse_edge_list
from gpcactus.solver import SolverTimeout, gp_number_exact, gp_number_naive

EXIT_OK, EXIT_USAGE, EXIT_TIMEOUT, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read_graph(args: argparse.Namespace) -> Graph:
    if args.stdin:
        text = sys.stdin.read()
    else:
        text = Path(args.input).read_text(encoding="utf-8")
    return parse_edge_list(text)


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="edge-list file")
    src.add_argument("--stdin", action="store_true", help="read the edge list from stdin")


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        for key, val in obj.items():
            print(f"{key}: {val}")


def cmd_gp(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    try:
        if args.method == "naive":
            cert = gp_number_naive(g)
        else:
            cert = gp_number_exact(g, timeout=args.timeout, refine_bound=args.refine_bound)
    except SolverTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    _emit({"n": g.vertex_count, "m": g.edge_count, "gp": cert.value,
           "witness": cert.sorted_witness(), "method": cert.label}, args.format)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    profile = cactus_profile(g)
    out = profile.to_dict()
    out["bounds"] = bound_report(profile, strict=args.strict_good_flag).to_dict()
    out["good_interpretation"] = "strict" if args.strict_good_flag else "inclusive"
    if args.format == "json":
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"n={out['n']} k={out['k']} t={out['t']} k1_odd={out['k1_odd']} chain={out['is_chain']}")
        for c in profile.cycles:
            print(f"  cycle len={c.length} cuts={c.cut_vertices} D_c={c.d_c} "
                  f"good={c.is_good} bad={c.is_bad} end_block={c.is_end_block}")
        for key, val in out["bounds"].items():
            if key != "sources":
                print(f"  {key}: {val}")
    return EXIT_OK


def _parse_params(raw: Sequence[str]) -> tuple[int, ...]:
    vals = []
    for chunk in raw:
        for piece in chunk.replace(",", " ").split():
            try:
                vals.append(int(piece))
            except ValueError:
                raise UsageError(f"parameter {piece!r} is not an integer") from None
    return tuple(vals)


def cmd_generate(args: argparse.Namespace) -> int:
    if args.spec:
        spec = FamilySpec.from_json(args.spec)
    else:
        if not args.family:
            raise UsageError("generate needs --family or --spec")
        spec = FamilySpec(Family(args.family), _parse_params(args.params or []), args.seed)
    g = generate(spec)
    sys.stdout.write(f"# {spec.to_json()}\n")
    sys.stdout.write(g.to_edge_list())
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    theorem = TheoremId(args.theorem)
    sweep = default_sweep(theorem, args.count, args.max_n, args.seed, args.strict_good_flag)
    records = audit(theorem, sweep, budget=args.timeout, strict=args.strict_good_flag, jobs=args.jobs)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            write_jsonl(records, fh)
    else:
        write_jsonl(records, sys.stdout)
    counts = summarize(records)
    print(f"{theorem.value}: " + ", ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)
    if args.figure:
        from gpcactus.figures import render_audit_figure

        interp = " (strict good)" if args.strict_good_flag else ""
        render_audit_figure(records, args.figure, title=f"{theorem.value}{interp}")
    return EXIT_COUNTEREXAMPLE if counts[Verdict.COUNTEREXAMPLE.value] else EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    """Re-solve every Counterexample record and compare with its stored value."""
    with open(args.report, encoding="utf-8") as fh:
        records = read_jsonl(fh)
    mismatches = 0
    for rec in records:
        if rec.verdict is not Verdict.COUNTEREXAMPLE or isinstance(rec.actual, bool):
            continue
        value = gp_number_exact(parse_edge_list(rec.edge_list_text())).value
        ok = value == rec.actual
        mismatches += not ok
        print(json.dumps({"instance": rec.instance, "recorded": rec.actual, "replayed": value, "match": ok},
                         sort_keys=True))
    return EXIT_COUNTEREXAMPLE if mismatches else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gpcactus", description="General position numbers of graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gp", help="exact gp-number of an edge-list graph")
    _add_input(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--timeout", type=float, metavar="SECS")
    p.add_argument("--method", choices=("exact", "naive"), default="exact")
    p.add_argument("--refine-bound", action="store_true", help="clique-cover bound in branch and bound")
    p.set_defaults(func=cmd_gp)

    p = sub.add_parser("classify", help="cactus profile and bounds")
    _add_input(p)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--strict-good-flag", action="store_true", help="good means good and not bad")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("generate", help="emit a family member as an edge list")
    p.add_argument("--family", choices=[f.value for f in Family])
    p.add_argument("--params", nargs="+", metavar="LIST", help="integers, comma or space separated")
    p.add_argument("--seed", type=int)
    p.add_argument("--spec", metavar="JSON", help='{"family": ..., "params": [...], "seed": ...}')
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("audit", help="check a claim over an instance sweep (JSON lines)")
    p.add_argument("--theorem", required=True, choices=[t.value for t in TheoremId])
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict-good-flag", action="store_true")
    p.add_argument("--timeout", type=float, metavar="SECS", help="per-instance solver budget")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", metavar="FILE")
    p.add_argument("--figure", metavar="PATH", help="also render a summary figure")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("replay", help="re-solve counterexamples from an audit report")
    p.add_argument("report", metavar="FILE")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, NotACactus, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
