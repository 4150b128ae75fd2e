"""Command-line surface.

Subcommands: solve, product, scan, verify-proof, report.  Exit codes are a
stable contract: 0 success, 2 usage or parse error, 3 violated precondition
(isolated vertex where an isolate-free graph is required), 4 a bound
violation was found (monitorable as a distinct failure class).
"""

import argparse
import sys
from pathlib import Path

from .graph6 import Graph6Error, emit_graph6, parse_graph6
from .graphs import Graph, cartesian_product, generate
from .harness import REPLAY_CHECKS, ScanOptions, hunt_from_records, scan, summarize, verify_pair
from .io import FamilySpecError, load_spec_json, parse_factor_token, parse_pair_spec, render_csv_report
from .solvers import KINDS, IsolateError, solve_bnb

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_BOUND_VIOLATION = 4


class _UsageError(Exception):
    pass


def _load_single_graph(args) -> Graph:
    sources = [
        args.family is not None,
        args.graph6 is not None,
        args.graph6_file is not None,
    ]
    if sum(sources) != 1:
        raise _UsageError("exactly one graph source required (--family / --graph6 / --graph6-file)")
    if args.family is not None:
        if args.n is None:
            raise _UsageError("--family needs --n")
        return generate(args.family, args.n, p=args.p, seed=args.seed)
    if args.graph6 is not None:
        return parse_graph6(args.graph6)
    text = Path(args.graph6_file).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise _UsageError(f"{args.graph6_file}: expected exactly one graph6 line, found {len(lines)}")
    return parse_graph6(lines[0])


def _factor_from_token(token: str):
    entries = parse_factor_token(token)
    if len(entries) != 1:
        raise _UsageError(f"token {token!r} must name exactly one graph here")
    ident, graph6 = entries[0]
    return ident, parse_graph6(graph6)


def _cmd_solve(args) -> int:
    graph = _load_single_graph(args)
    result = solve_bnb(graph, args.kind)
    witness = ",".join(map(str, sorted(result.witness.vertices())))
    print(f"{result.value} [{witness}]")
    return EXIT_OK


def _cmd_product(args) -> int:
    _, left = _factor_from_token(args.left)
    _, right = _factor_from_token(args.right)
    prod = cartesian_product(left, right)
    print(emit_graph6(prod.graph))
    return EXIT_OK


def _make_options(args) -> ScanOptions:
    return ScanOptions(
        replay=not getattr(args, "no_replay", False),
        product_cap=getattr(args, "product_cap", None),
        workers=getattr(args, "workers", None),
    )


def _cmd_scan(args) -> int:
    if (args.spec is None) == (args.spec_json is None):
        raise _UsageError("scan needs exactly one of --spec or --spec-json")
    spec = parse_pair_spec(args.spec) if args.spec else load_spec_json(args.spec_json)
    options = _make_options(args)
    options.out_jsonl = args.out
    options.out_csv = args.csv or str(Path(args.out).with_suffix(".csv"))
    summary = scan(spec, options)
    print(summary.render())
    hunt = hunt_from_records(summary.records, (args.threshold_num, args.threshold_den))
    print(hunt.render())
    if summary.bound_violations or hunt.findings:
        return EXIT_BOUND_VIOLATION
    return EXIT_OK


def _cmd_verify_proof(args) -> int:
    lid, left = _factor_from_token(args.left)
    rid, right = _factor_from_token(args.right)
    options = ScanOptions(replay=True, product_cap=args.product_cap)
    record = verify_pair(left, right, options, left_id=lid, right_id=rid)
    if record.skipped:
        print(f"skipped: {record.skipped}")
        return EXIT_USAGE
    print(f"instance       {record.id}")
    print(f"gamma_t2(G)    {record.gamma_t2_g}")
    print(f"gamma_t2(H)    {record.gamma_t2_h}")
    print(f"rho(G)         {record.rho_g}")
    print(f"gamma_t2(GxH)  {record.gamma_t2_prod}")
    print(f"bound_thm1     {record.bound_thm1}  ({'ok' if record.bound_thm1_ok else 'VIOLATED'})")
    print(f"bound_thm2     {record.bound_thm2}  ({'ok' if record.bound_thm2_ok else 'VIOLATED'})")
    print(f"ratio          {record.ratio_num}/{record.ratio_den}")
    print("check          status")
    for check in REPLAY_CHECKS:
        status = record.replay.get(check, "skipped")
        extra = ""
        if check == "claim2" and record.claim2_cells_pass is not None:
            extra = f"  (cells {record.claim2_cells_pass} pass, {record.claim2_cells_fail} fail)"
        print(f"{check:<14} {status}{extra}")
    if not (record.bound_thm1_ok and record.bound_thm2_ok):
        return EXIT_BOUND_VIOLATION
    return EXIT_OK


def _cmd_report(args) -> int:
    print(render_csv_report(args.csv))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semitotal",
        description="Exact semi-total domination laboratory for Cartesian products.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="compute one invariant of one graph")
    solve.add_argument("--family", choices=("path", "cycle", "complete", "star", "random"))
    solve.add_argument("--n", type=int)
    solve.add_argument("--p", type=float, help="edge probability for --family random")
    solve.add_argument("--seed", type=int, help="PRNG seed for --family random")
    solve.add_argument("--graph6", help="graph6 string")
    solve.add_argument("--graph6-file", help="file holding one graph6 line")
    solve.add_argument("--kind", required=True, choices=KINDS)
    solve.set_defaults(func=_cmd_solve)

    product = sub.add_parser("product", help="emit graph6 of a Cartesian product")
    product.add_argument("--left", required=True, help="factor token, e.g. path:2 or g6:A_")
    product.add_argument("--right", required=True)
    product.set_defaults(func=_cmd_product)

    scan_p = sub.add_parser("scan", help="verify bounds over a factor grid")
    scan_p.add_argument("--spec", help='grammar spec, e.g. "paths:2-4 x cycles:3-5"')
    scan_p.add_argument("--spec-json", help="JSON spec file (random families, graph6 files)")
    scan_p.add_argument("--out", required=True, help="JSONL output path")
    scan_p.add_argument("--csv", help="CSV output path (default: --out with .csv)")
    scan_p.add_argument("--no-replay", action="store_true", help="skip the proof replay")
    scan_p.add_argument("--product-cap", type=int, help="skip products larger than this")
    scan_p.add_argument("--workers", type=int, help="worker processes (default: env or cpu count)")
    scan_p.add_argument("--threshold-num", type=int, default=1, help="ratio threshold numerator")
    scan_p.add_argument("--threshold-den", type=int, default=2, help="ratio threshold denominator")
    scan_p.set_defaults(func=_cmd_scan)

    verify = sub.add_parser("verify-proof", help="full replay on one pair, per-check table")
    verify.add_argument("--left", required=True)
    verify.add_argument("--right", required=True)
    verify.add_argument("--product-cap", type=int, default=None)
    verify.set_defaults(func=_cmd_verify_proof)

    report = sub.add_parser("report", help="render a scan CSV as an aligned table")
    report.add_argument("--csv", required=True)
    report.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IsolateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (_UsageError, Graph6Error, FamilySpecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
