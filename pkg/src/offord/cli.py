"""Command-line interface wiring the verification and census machinery.

Exit codes: 0 success, 1 a violation or counterexample was found, 2 usage
or input format error, 3 capacity or budget exceeded.  Errors also emit a
structured JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import census as census_mod
from . import constructions, graphs, verification
from .bounds import EqualityClass, classify_equality, estimate_cost_t7, lo_bound
from .matrices import (
    CapacityError,
    SignMatrix,
    format_matrix,
    normalize_to_reduced,
    omega_count_fast,
    omega_enumerate,
    parse_matrix,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


class UsageError(ValueError):
    pass


def _emit_error(code: int, message: str) -> int:
    print(json.dumps({"error": message, "exitCode": code}), file=sys.stderr)
    return code


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_matrix(path: str) -> SignMatrix:
    try:
        return parse_matrix(_read_text(path))
    except ValueError as exc:
        if isinstance(exc, (UsageError, CapacityError)):
            raise
        raise UsageError(f"{path}: {exc}") from exc


def _load_graph(path: str) -> graphs.Graph:
    try:
        return graphs.read_graph_text(_read_text(path))
    except ValueError as exc:
        if isinstance(exc, (UsageError, CapacityError)):
            raise
        raise UsageError(f"{path}: {exc}") from exc


def _print_report(report: verification.VerificationReport, fmt: str,
                  out_path: Optional[str]) -> int:
    if fmt == "json":
        text = report.to_json_text()
    elif fmt == "text":
        lines = [
            f"scope: {report.scope}",
            f"bound: {report.bound_text}",
            f"candidates: {report.candidates} (excluded {report.excluded})",
            f"max omega: {report.max_omega}  max ratio: {report.max_ratio[0]}/{report.max_ratio[1]}",
            f"violations: {len(report.violations)}",
            f"equality witnesses: {len(report.equality_witnesses)}",
            f"partial: {report.partial}",
        ]
        text = "\n".join(lines)
    elif fmt == "csv":
        text = ("scope,candidates,excluded,maxOmega,violations,witnesses,partial\n"
                f"\"{report.scope}\",{report.candidates},{report.excluded},"
                f"{report.max_omega},{len(report.violations)},"
                f"{len(report.equality_witnesses)},{report.partial}")
    else:
        raise UsageError(f"unknown format {fmt!r}")
    if out_path:
        Path(out_path).write_text(text + "\n")
    else:
        print(text)
    if report.violations:
        return EXIT_VIOLATION
    if report.partial:
        return EXIT_CAPACITY
    return EXIT_OK


def _cmd_omega(args) -> int:
    m = _load_matrix(args.matrix_file)
    if args.fast:
        count = omega_count_fast(m)
        print(count)
        return EXIT_OK
    res = omega_enumerate(m, collect_members=args.members)
    print(res.count)
    if args.members:
        for bv in res.members:
            print(bv)
    return EXIT_OK


def _cmd_normalize(args) -> int:
    m = _load_matrix(args.matrix_file)
    out = normalize_to_reduced(m)
    if out.short_circuit is not None:
        print(json.dumps({"shortCircuit": {"row": out.short_circuit.row_index,
                                           "bound": out.short_circuit.bound}}))
    else:
        sys.stdout.write(format_matrix(out.reduced))
    return EXIT_OK


def _cmd_bound(args) -> int:
    print(lo_bound(args.k, args.l).value)
    return EXIT_OK


def _cmd_classify(args) -> int:
    m = _load_matrix(args.matrix_file)
    try:
        match = classify_equality(m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"class": match.kind.value}
    if match.kind is not EqualityClass.NONE:
        if match.signs is not None:
            payload["signs"] = list(match.signs)
        if match.shift is not None:
            payload["shift"] = match.shift
    print(json.dumps(payload))
    return EXIT_OK


def _cmd_verify_lemma(args) -> int:
    report = verification.verify_lemma_comput(
        args.part, exclusion=not args.no_exclusion, max_cols=args.max_cols,
        budget_seconds=args.budget, threads=args.threads)
    return _print_report(report, args.format, args.output)


def _cmd_verify_theorem(args) -> int:
    report = verification.verify_main_theorem(args.k, args.l)
    return _print_report(report, args.format, args.output)


def _cmd_cost_estimate(args) -> int:
    est = estimate_cost_t7()
    print(est.row_choices)
    print(est.inner_products)
    return EXIT_OK


def _cmd_rank(args) -> int:
    print(graphs.graph_rank(_load_graph(args.graph_file)))
    return EXIT_OK


def _cmd_corank(args) -> int:
    print(graphs.graph_corank(_load_graph(args.graph_file)))
    return EXIT_OK


def _cmd_construct(args) -> int:
    b = constructions.build_extremal(args.family, args.l)
    sys.stdout.write(graphs.format_bipartite(b))
    return EXIT_OK


def _cmd_census(args) -> int:
    if args.mode == "bipartite-rank":
        result = census_mod.bipartite_rank_census(args.r, extended=args.extended)
        expected = constructions.extremal_order("bipartite_rank", args.r)
    elif args.mode == "cobipartite-corank":
        result = census_mod.cobipartite_corank_census(args.r)
        expected = constructions.extremal_order("cobipartite_corank", args.r)
    elif args.mode == "extend":
        records = list(census_mod.extend_census(args.r))
        if args.output:
            census_mod.save_census(records, args.output)
        print(json.dumps({"mode": "extend", "r": args.r, "classes": len(records),
                          "maxOrder": max((rec.order for rec in records), default=0)}))
        return EXIT_OK
    else:
        raise UsageError(f"unknown census mode {args.mode!r}")
    if args.output:
        census_mod.save_census(result.records, args.output)
    payload = {
        "mode": args.mode,
        "r": args.r,
        "maxOrder": result.max_order,
        "expectedMaxOrder": expected,
        "classes": len(result.records),
        "extremal": [rec.canonical_key for rec in result.extremal],
    }
    print(json.dumps(payload))
    return EXIT_OK if result.max_order == expected else EXIT_VIOLATION


def _cmd_embed_check(args) -> int:
    try:
        b = graphs.parse_bipartite(_read_text(args.bipartite_file))
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(str(exc)) from exc
    try:
        result = constructions.embeds_in_template(b, args.l)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(json.dumps({"embeds": result, "l": args.l}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="offord",
        description="Exact selection-count verification and graph rank/corank censuses.")
    default_threads = int(os.environ.get("OFFORD_THREADS", "1"))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("omega", help="count accepted selection vectors of a matrix")
    p.add_argument("matrix_file")
    p.add_argument("--members", action="store_true", help="also list the vectors")
    p.add_argument("--fast", action="store_true",
                   help="bit-parallel path (entries must be in {-1,0,1})")
    p.set_defaults(func=_cmd_omega)

    p = sub.add_parser("normalize", help="strip non-constraining rows or short-circuit")
    p.add_argument("matrix_file")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("bound", help="closed-form count bound for reduced k x l matrices")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("classify", help="match a reduced matrix against the equality templates")
    p.add_argument("matrix_file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("verify-lemma", help="exhaustive small-matrix bound checks")
    p.add_argument("--part", required=True, choices=sorted(verification.LEMMA_PARTS))
    p.add_argument("--no-exclusion", action="store_true",
                   help="diagnostic: keep the excluded classes in scope")
    p.add_argument("--max-cols", type=int, default=None,
                   help="restrict the column cap (partial coverage)")
    p.add_argument("--budget", type=float, default=None, help="time budget in seconds")
    p.add_argument("--threads", type=int, default=default_threads)
    p.add_argument("--format", choices=("json", "text", "csv"), default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_verify_lemma)

    p = sub.add_parser("verify-theorem", help="exhaustive bound + equality-class check")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--format", choices=("json", "text", "csv"), default="json")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_verify_theorem)

    p = sub.add_parser("cost-estimate", help="work estimate for the weight-7 two-row sweep")
    p.set_defaults(func=_cmd_cost_estimate)

    p = sub.add_parser("rank", help="exact adjacency rank of a graph")
    p.add_argument("graph_file")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("corank", help="exact rank of adjacency plus identity")
    p.add_argument("graph_file")
    p.set_defaults(func=_cmd_corank)

    p = sub.add_parser("construct", help="emit an extremal bipartite construction")
    p.add_argument("--family", required=True, choices=constructions.FAMILIES)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("census", help="extremal censuses")
    p.add_argument("--mode", required=True,
                   choices=("bipartite-rank", "cobipartite-corank", "extend"))
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--extended", action="store_true",
                   help="allow the extended-budget ranges")
    p.add_argument("--output", default=None, help="write records to this census file")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("embed-check", help="test embedding into the stacked column template")
    p.add_argument("bipartite_file")
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=_cmd_embed_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        return _emit_error(EXIT_USAGE, str(exc))
    except CapacityError as exc:
        return _emit_error(EXIT_CAPACITY, str(exc))
    except ValueError as exc:
        return _emit_error(EXIT_USAGE, str(exc))


if __name__ == "__main__":
    sys.exit(main())
