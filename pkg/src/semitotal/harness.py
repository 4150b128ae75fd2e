"""Scan orchestration: per-pair verification, family sweeps, and the
conjectured-ratio hunt.

Every pair record carries the exact invariants of both factors and the
product, the two product lower bounds, the product/factor ratio as an exact
rational, and pass/fail flags for the full proof replay.  Ratios and bounds
are integers end to end; findings embed enough context (graph6 of both
factors, the product set, the cell partition) to replay outside the scan.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .graph6 import emit_graph6, parse_graph6
from .graphs import Graph, cartesian_product
from .proofs import (
    FalsificationError,
    build_cell_partition,
    build_connector_set,
    build_cover_index,
    cell_partition_violations,
    check_column_bounds,
    counting_checks,
    max_allied_set,
    project_profiles,
)
from .solvers import (
    IsolateError,
    OracleLimitError,
    lexleast_min_semitotal_set,
    solve_bnb,
)

WORKERS_ENV = "SEMITOTAL_WORKERS"
REPLAY_PRODUCT_CAP = 36
NO_REPLAY_PRODUCT_CAP = 49

REPLAY_CHECKS = ("pi_valid", "claim1", "claim2", "eq1", "eq2", "eq3")


@dataclass
class ScanOptions:
    """Knobs for verify_pair/scan; defaults give the desk-scale envelope."""

    replay: bool = True
    product_cap: int | None = None  # None: 36 with replay, 49 without
    workers: int | None = None  # None: SEMITOTAL_WORKERS env, then cpu count
    closest_k: int = 10
    out_jsonl: str | None = None
    out_csv: str | None = None

    def effective_cap(self) -> int:
        if self.product_cap is not None:
            return self.product_cap
        return REPLAY_PRODUCT_CAP if self.replay else NO_REPLAY_PRODUCT_CAP

    def effective_workers(self) -> int:
        if self.workers is not None:
            return max(1, self.workers)
        env = os.environ.get(WORKERS_ENV)
        if env:
            return max(1, int(env))
        return os.cpu_count() or 1


@dataclass
class InstanceRecord:
    """One verified factor pair; JSON-plain so it serializes losslessly."""

    id: str
    left_id: str
    right_id: str
    graph6_g: str
    graph6_h: str
    n_g: int
    n_h: int
    skipped: str | None = None
    gamma_t2_g: int | None = None
    gamma_t2_h: int | None = None
    rho_g: int | None = None
    gamma_t2_prod: int | None = None
    bound_thm1: int | None = None
    bound_thm2: int | None = None
    ratio_num: int | None = None
    ratio_den: int | None = None
    bound_thm1_ok: bool | None = None
    bound_thm2_ok: bool | None = None
    replay: dict = field(default_factory=lambda: {c: "skipped" for c in REPLAY_CHECKS})
    claim2_cells_pass: int | None = None
    claim2_cells_fail: int | None = None
    findings: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    @property
    def ratio(self) -> Fraction | None:
        if self.ratio_num is None:
            return None
        return Fraction(self.ratio_num, self.ratio_den)

    def to_json_dict(self, include_timing: bool = True) -> dict:
        out = {
            "id": self.id,
            "left_id": self.left_id,
            "right_id": self.right_id,
            "graph6_g": self.graph6_g,
            "graph6_h": self.graph6_h,
            "n_g": self.n_g,
            "n_h": self.n_h,
            "skipped": self.skipped,
            "gamma_t2_G": self.gamma_t2_g,
            "gamma_t2_H": self.gamma_t2_h,
            "rho_G": self.rho_g,
            "gamma_t2_prod": self.gamma_t2_prod,
            "bound_thm1": self.bound_thm1,
            "bound_thm2": self.bound_thm2,
            "ratio_num": self.ratio_num,
            "ratio_den": self.ratio_den,
            "bound_thm1_ok": self.bound_thm1_ok,
            "bound_thm2_ok": self.bound_thm2_ok,
            "replay": dict(self.replay),
            "claim2_cells_pass": self.claim2_cells_pass,
            "claim2_cells_fail": self.claim2_cells_fail,
            "findings": list(self.findings),
        }
        if include_timing:
            out["timing"] = dict(self.timing)
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "InstanceRecord":
        return cls(
            id=data["id"],
            left_id=data["left_id"],
            right_id=data["right_id"],
            graph6_g=data["graph6_g"],
            graph6_h=data["graph6_h"],
            n_g=data["n_g"],
            n_h=data["n_h"],
            skipped=data.get("skipped"),
            gamma_t2_g=data.get("gamma_t2_G"),
            gamma_t2_h=data.get("gamma_t2_H"),
            rho_g=data.get("rho_G"),
            gamma_t2_prod=data.get("gamma_t2_prod"),
            bound_thm1=data.get("bound_thm1"),
            bound_thm2=data.get("bound_thm2"),
            ratio_num=data.get("ratio_num"),
            ratio_den=data.get("ratio_den"),
            bound_thm1_ok=data.get("bound_thm1_ok"),
            bound_thm2_ok=data.get("bound_thm2_ok"),
            replay=dict(data.get("replay", {})),
            claim2_cells_pass=data.get("claim2_cells_pass"),
            claim2_cells_fail=data.get("claim2_cells_fail"),
            findings=list(data.get("findings", [])),
            timing=dict(data.get("timing", {})),
        )


def _finding(
    kind: str,
    record_id: str,
    g6g: str,
    g6h: str,
    failed_predicate: str,
    d: list[int] | None,
    partition: list[list[int]] | None,
    detail: dict,
) -> dict:
    return {
        "kind": kind,
        "instance_id": record_id,
        "graph6_g": g6g,
        "graph6_h": g6h,
        "failed_predicate": failed_predicate,
        "d": d,
        "partition": partition,
        "detail": detail,
    }


def _status(ok: bool | None) -> str:
    if ok is None:
        return "skipped"
    return "pass" if ok else "fail"


def verify_pair(
    g: Graph,
    h: Graph,
    options: ScanOptions | None = None,
    left_id: str | None = None,
    right_id: str | None = None,
) -> InstanceRecord:
    """Compute exact invariants and bounds for one factor pair, optionally
    replaying the full proof machinery on the product."""
    options = options or ScanOptions()
    for side, graph in (("left", g), ("right", h)):
        if not graph.is_isolate_free():
            raise IsolateError(f"{side} factor has an isolated vertex")
    g6g, g6h = emit_graph6(g), emit_graph6(h)
    lid = left_id or f"g6:{g6g}"
    rid = right_id or f"g6:{g6h}"
    record = InstanceRecord(
        id=f"{lid} x {rid} {g6g} {g6h}",
        left_id=lid,
        right_id=rid,
        graph6_g=g6g,
        graph6_h=g6h,
        n_g=g.n,
        n_h=h.n,
    )
    cap = options.effective_cap()
    if g.n * h.n > cap:
        record.skipped = f"product on {g.n * h.n} vertices exceeds cap {cap}"
        return record

    clock = time.perf_counter
    t = clock()
    record.gamma_t2_g = solve_bnb(g, "gamma_t2").value
    record.rho_g = solve_bnb(g, "rho").value
    record.timing["solve_g"] = clock() - t
    t = clock()
    record.gamma_t2_h = solve_bnb(h, "gamma_t2").value
    record.timing["solve_h"] = clock() - t

    t = clock()
    prod = cartesian_product(g, h)
    d = lexleast_min_semitotal_set(prod.graph)
    record.gamma_t2_prod = len(d)
    record.timing["solve_prod"] = clock() - t

    record.bound_thm1 = record.rho_g * record.gamma_t2_h
    record.bound_thm2 = ceil(record.gamma_t2_g * record.gamma_t2_h / 3)
    ratio = Fraction(record.gamma_t2_prod, record.gamma_t2_g * record.gamma_t2_h)
    record.ratio_num, record.ratio_den = ratio.numerator, ratio.denominator
    record.bound_thm1_ok = record.gamma_t2_prod >= record.bound_thm1
    record.bound_thm2_ok = record.gamma_t2_prod >= record.bound_thm2
    for name, ok, bound in (
        ("bound_thm1", record.bound_thm1_ok, record.bound_thm1),
        ("bound_thm2", record.bound_thm2_ok, record.bound_thm2),
    ):
        if not ok:
            record.findings.append(
                _finding(
                    "bound_violation",
                    record.id,
                    g6g,
                    g6h,
                    f"gamma_t2_prod >= {name}",
                    sorted(d.vertices()),
                    None,
                    {
                        "gamma_t2_prod": record.gamma_t2_prod,
                        name: bound,
                        "gamma_t2_G": record.gamma_t2_g,
                        "gamma_t2_H": record.gamma_t2_h,
                        "rho_G": record.rho_g,
                    },
                )
            )

    if not options.replay:
        return record

    t = clock()
    try:
        ap = max_allied_set(g)
        pi = build_cell_partition(g, ap)
    except (OracleLimitError, FalsificationError) as exc:
        if isinstance(exc, FalsificationError):
            record.findings.append(
                _finding(
                    "construction_failure",
                    record.id,
                    g6g,
                    g6h,
                    "build_cell_partition",
                    sorted(d.vertices()),
                    None,
                    {"error": str(exc), **exc.context},
                )
            )
            record.replay["pi_valid"] = "fail"
        else:
            record.findings.append(
                _finding(
                    "replay_unavailable",
                    record.id,
                    g6g,
                    g6h,
                    "max_allied_set",
                    None,
                    None,
                    {"error": str(exc)},
                )
            )
        record.timing["replay"] = clock() - t
        return record

    cells = [sorted(c.vertices()) for c in pi.cells]
    d_list = sorted(d.vertices())
    violations = cell_partition_violations(g, ap, pi)
    record.replay["pi_valid"] = _status(not violations)
    if violations:
        record.findings.append(
            _finding(
                "construction_failure",
                record.id,
                g6g,
                g6h,
                "cell_partition_invariants",
                d_list,
                cells,
                {"violations": violations},
            )
        )

    profiles = project_profiles(prod, d, pi)
    cover = build_cover_index(prod, d, pi, profiles)

    column_report = check_column_bounds(
        prod, d, ap, pi, profiles, cover, record.gamma_t2_prod
    )
    record.replay["claim1"] = _status(column_report.ok)
    for check in column_report.columns:
        if not check.ok:
            record.findings.append(
                _finding(
                    "claim1_failure",
                    record.id,
                    g6g,
                    g6h,
                    "claim1_column_check",
                    d_list,
                    cells,
                    {
                        "column": check.column,
                        "indexed_rows": check.indexed_rows,
                        "column_set_size": check.column_set_size,
                        "inequality_ok": check.inequality_ok,
                        "witness": sorted(check.witness.vertices()),
                        "witness_valid": check.witness_valid,
                        "witness_size_ok": check.witness_size_ok,
                    },
                )
            )

    cells_pass = cells_fail = 0
    failed_cells = []
    for profile in profiles:
        result = build_connector_set(h, profile)
        if result.base_valid:
            cells_pass += 1
        else:
            cells_fail += 1
            failed_cells.append(profile.index)
            record.findings.append(
                _finding(
                    "claim2_edge_case",
                    record.id,
                    g6g,
                    g6h,
                    "claim2_validation",
                    d_list,
                    cells,
                    {
                        "cell": profile.index,
                        "projection": sorted(profile.projection.vertices()),
                        "missing": sorted(profile.missing.vertices()),
                        "uncovered": sorted(profile.uncovered.vertices()),
                        "connectors": sorted(result.connectors.vertices()),
                    },
                )
            )
    record.claim2_cells_pass = cells_pass
    record.claim2_cells_fail = cells_fail
    record.replay["claim2"] = _status(cells_fail == 0)

    checks = counting_checks(
        profiles, cover, record.gamma_t2_prod, record.gamma_t2_g, record.gamma_t2_h
    )
    record.replay["eq1"] = _status(checks.eq1_ok)
    record.replay["eq2"] = _status(checks.eq2_ok)
    record.replay["eq3"] = _status(checks.eq3_ok)
    if not (checks.eq1_ok and checks.eq2_ok and checks.eq3_ok and checks.chain_ok):
        record.findings.append(
            _finding(
                "counting_inequality_failure",
                record.id,
                g6g,
                g6h,
                "counting_checks",
                d_list,
                cells,
                {
                    "index_total": checks.index_total,
                    "cell_sum": checks.cell_sum,
                    "set_size": checks.set_size,
                    "eq1_ok": checks.eq1_ok,
                    "eq2_ok": checks.eq2_ok,
                    "eq3_ok": checks.eq3_ok,
                    "chain_ok": checks.chain_ok,
                    # eq3 leans on the per-cell validations; report the link
                    "claim2_failed_cells": failed_cells,
                },
            )
        )
    record.timing["replay"] = clock() - t
    return record


@dataclass
class ScanSummary:
    records: list[InstanceRecord]
    findings: list[dict]
    total: int
    solved: int
    skipped: int
    min_ratio: tuple[int, int] | None
    min_ratio_id: str | None
    check_pass_counts: dict
    bound_violations: int

    def render(self) -> str:
        lines = [
            f"instances: {self.total} ({self.solved} solved, {self.skipped} skipped)",
            f"findings: {len(self.findings)} ({self.bound_violations} bound violations)",
        ]
        if self.min_ratio is not None:
            lines.append(
                f"min ratio: {self.min_ratio[0]}/{self.min_ratio[1]} at {self.min_ratio_id}"
            )
        for check in REPLAY_CHECKS:
            counts = self.check_pass_counts.get(check, {})
            lines.append(
                f"replay {check}: {counts.get('pass', 0)} pass, "
                f"{counts.get('fail', 0)} fail, {counts.get('skipped', 0)} skipped"
            )
        return "\n".join(lines)


def _pair_task(task) -> InstanceRecord:
    lid, g6g, rid, g6h, options = task
    try:
        g = _graph_from_cache(g6g)
        h = _graph_from_cache(g6h)
        return verify_pair(g, h, options, left_id=lid, right_id=rid)
    except (IsolateError, ValueError) as exc:
        # single-instance failures become skipped records, never abort a scan
        return InstanceRecord(
            id=f"{lid} x {rid} {g6g} {g6h}",
            left_id=lid,
            right_id=rid,
            graph6_g=g6g,
            graph6_h=g6h,
            n_g=parse_graph6(g6g).n,
            n_h=parse_graph6(g6h).n,
            skipped=f"error: {exc}",
        )


_GRAPH_CACHE: dict[str, Graph] = {}


def _graph_from_cache(g6: str) -> Graph:
    # keyed by graph6 so identical factors never cross-contaminate
    graph = _GRAPH_CACHE.get(g6)
    if graph is None:
        graph = parse_graph6(g6)
        _GRAPH_CACHE[g6] = graph
    return graph


def scan(spec, options: ScanOptions | None = None) -> ScanSummary:
    """Run verify_pair over the grid of factor descriptors, in spec order.

    Single-instance errors become skipped records, never aborts.  Results are
    merged in spec order regardless of worker scheduling, and written as
    JSONL/CSV when the options name output paths.
    """
    options = options or ScanOptions()
    tasks = [
        (lid, g6g, rid, g6h, options)
        for (lid, g6g) in spec.left
        for (rid, g6h) in spec.right
    ]
    workers = options.effective_workers()
    records: list[InstanceRecord] = []
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records.extend(pool.map(_pair_task, tasks, chunksize=8))
    else:
        records.extend(map(_pair_task, tasks))
    summary = summarize(records)
    if options.out_jsonl:
        from .io import write_jsonl

        write_jsonl(options.out_jsonl, records)
    if options.out_csv:
        from .io import write_csv

        write_csv(options.out_csv, records)
    return summary


def summarize(records: list[InstanceRecord]) -> ScanSummary:
    findings = [f for r in records for f in r.findings]
    solved = [r for r in records if r.skipped is None]
    min_ratio = None
    min_ratio_id = None
    for r in solved:
        ratio = (r.ratio_num, r.ratio_den)
        if min_ratio is None or Fraction(*ratio) < Fraction(*min_ratio):
            min_ratio, min_ratio_id = ratio, r.id
    counts = {check: {"pass": 0, "fail": 0, "skipped": 0} for check in REPLAY_CHECKS}
    for r in records:
        for check in REPLAY_CHECKS:
            counts[check][r.replay.get(check, "skipped")] += 1
    return ScanSummary(
        records=records,
        findings=findings,
        total=len(records),
        solved=len(solved),
        skipped=len(records) - len(solved),
        min_ratio=min_ratio,
        min_ratio_id=min_ratio_id,
        check_pass_counts=counts,
        bound_violations=sum(1 for f in findings if f["kind"] == "bound_violation"),
    )


@dataclass
class HuntReport:
    threshold: tuple[int, int]
    findings: list[dict]
    closest: list[dict]  # {"id", "ratio_num", "ratio_den"} nearest above threshold

    def render(self) -> str:
        num, den = self.threshold
        lines = [f"conjecture threshold {num}/{den}: {len(self.findings)} counterexamples"]
        for f in self.findings:
            lines.append(f"  COUNTEREXAMPLE {f['instance_id']} {f['detail']}")
        lines.append("closest instances:")
        for c in self.closest:
            lines.append(f"  {c['ratio_num']}/{c['ratio_den']}  {c['id']}")
        return "\n".join(lines)


def hunt_from_records(
    records: list[InstanceRecord],
    threshold: tuple[int, int] = (1, 2),
    closest_k: int = 10,
) -> HuntReport:
    bar = Fraction(*threshold)
    findings = []
    above = []
    for r in records:
        if r.skipped is not None:
            continue
        ratio = Fraction(r.ratio_num, r.ratio_den)
        if ratio < bar:
            findings.append(
                _finding(
                    "conjecture_counterexample",
                    r.id,
                    r.graph6_g,
                    r.graph6_h,
                    f"ratio >= {threshold[0]}/{threshold[1]}",
                    None,
                    None,
                    {"ratio_num": r.ratio_num, "ratio_den": r.ratio_den},
                )
            )
        else:
            above.append((ratio - bar, r.id, r))
    above.sort(key=lambda t: (t[0], t[1]))
    closest = [
        {"id": r.id, "ratio_num": r.ratio_num, "ratio_den": r.ratio_den}
        for _, _, r in above[:closest_k]
    ]
    return HuntReport(threshold=threshold, findings=findings, closest=closest)


def hunt_conjecture(
    threshold: tuple[int, int],
    spec,
    options: ScanOptions | None = None,
) -> HuntReport:
    """Scan the spec and flag every instance whose product/factor ratio falls
    below the threshold (expected empty at 1/2), with the nearest instances."""
    options = options or ScanOptions()
    summary = scan(spec, options)
    return hunt_from_records(summary.records, threshold, options.closest_k)
