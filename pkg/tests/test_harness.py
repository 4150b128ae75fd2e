from fractions import Fraction

import pytest

from semitotal import (
    InstanceRecord,
    IsolateError,
    ScanOptions,
    from_edge_list,
    generate,
    hunt_conjecture,
    hunt_from_records,
    scan,
    summarize,
    verify_pair,
)
from semitotal.io import FamilySpec, comparison_form, parse_pair_spec


def options(**kw):
    kw.setdefault("workers", 1)
    return ScanOptions(**kw)


def test_verify_pair_p2_p2_fixture():
    p2 = generate("path", 2)
    record = verify_pair(p2, p2, options(), left_id="path:2", right_id="path:2")
    assert record.gamma_t2_g == 2 and record.gamma_t2_h == 2
    assert record.gamma_t2_prod == 2
    assert record.rho_g == 1
    assert record.bound_thm2 == 2 and record.bound_thm2_ok
    assert record.bound_thm1 == 2 and record.bound_thm1_ok
    assert record.gamma_t2_prod == record.bound_thm1  # tight instance
    assert (record.ratio_num, record.ratio_den) == (1, 2)
    assert all(record.replay[c] == "pass" for c in ("pi_valid", "claim1", "eq1", "eq2", "eq3"))


def test_verify_pair_k2_times_complete():
    k2 = generate("complete", 2)
    for n in (2, 3, 4):
        record = verify_pair(k2, generate("complete", n), options())
        assert record.gamma_t2_prod >= record.bound_thm1
        assert record.gamma_t2_prod >= record.bound_thm2


def test_verify_pair_ratio_in_lowest_terms():
    record = verify_pair(generate("path", 3), generate("path", 3), options())
    ratio = Fraction(record.ratio_num, record.ratio_den)
    assert (ratio.numerator, ratio.denominator) == (record.ratio_num, record.ratio_den)


def test_verify_pair_rejects_isolates():
    lonely = from_edge_list(3, [(0, 1)])
    with pytest.raises(IsolateError):
        verify_pair(lonely, generate("path", 2), options())


def test_verify_pair_size_cap_skip():
    g = generate("path", 7)
    record = verify_pair(g, g, options())  # 49 > 36 replay cap
    assert record.skipped is not None and "cap" in record.skipped
    assert record.gamma_t2_prod is None
    record2 = verify_pair(g, g, options(replay=False))  # 49 <= 49
    assert record2.skipped is None


def test_packing_bound_counterexample_confirmed_by_oracle():
    # independent of the search solver: subset enumeration on the 8-vertex
    # product proves the value, and the factor values are forced by hand
    from semitotal import cartesian_product, solve_oracle

    g, h = generate("path", 4), generate("path", 2)
    prod = cartesian_product(g, h)
    assert solve_oracle(prod.graph, "gamma_t2").value == 3
    assert solve_oracle(g, "rho").value == 2
    assert solve_oracle(h, "gamma_t2").value == 2
    assert 3 < 2 * 2


def test_verify_pair_detects_first_bound_falsification():
    # the smallest pair where the packing-based bound fails: the product of
    # the 4-path with an edge admits a 3-member semi-total dominating set
    record = verify_pair(generate("path", 4), generate("path", 2), options())
    assert record.gamma_t2_prod == 3
    assert record.bound_thm1 == 4
    assert record.bound_thm1_ok is False
    kinds = [f["kind"] for f in record.findings]
    assert "bound_violation" in kinds
    violation = next(f for f in record.findings if f["kind"] == "bound_violation")
    assert violation["failed_predicate"] == "gamma_t2_prod >= bound_thm1"
    assert violation["d"] is not None
    # the second bound still holds there
    assert record.bound_thm2_ok is True


def test_scan_paths_grid():
    spec = parse_pair_spec("paths:2-5 x paths:2-5")
    summary = scan(spec, options())
    assert summary.total == 16 and summary.skipped == 0
    violations = [f for f in summary.findings if f["kind"] == "bound_violation"]
    assert [v["instance_id"] for v in violations] == ["path:4 x path:2 Ch A_"]


def test_scan_cycles_min_ratio():
    spec = parse_pair_spec("cycles:3-6 x cycles:3-6")
    summary = scan(spec, options())
    assert summary.total == 16
    assert summary.min_ratio is not None
    assert Fraction(*summary.min_ratio) >= Fraction(1, 2)
    assert summary.min_ratio_id


def test_scan_empty_spec():
    summary = scan(FamilySpec(left=(), right=()), options())
    assert summary.total == 0 and summary.findings == []
    assert summary.min_ratio is None


def test_scan_deterministic_modulo_timing(tmp_path):
    spec = parse_pair_spec("paths:2-4 x stars:3-4")
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    scan(spec, options(out_jsonl=str(a)))
    scan(spec, options(out_jsonl=str(b)))
    assert comparison_form(a) == comparison_form(b)


def test_scan_parallel_equals_serial(tmp_path):
    spec = parse_pair_spec("paths:2-4 x cycles:3-4")
    serial = tmp_path / "serial.jsonl"
    parallel = tmp_path / "parallel.jsonl"
    scan(spec, options(out_jsonl=str(serial)))
    scan(spec, ScanOptions(workers=2, out_jsonl=str(parallel)))
    assert comparison_form(serial) == comparison_form(parallel)


def test_scan_single_instance_error_becomes_skip():
    # the one-vertex path is an isolate: the record is skipped, not fatal
    spec = FamilySpec(left=(("path:1", "@"),), right=(("path:2", "A_"),))
    summary = scan(spec, options())
    assert summary.total == 1
    assert summary.records[0].skipped is not None
    assert "error" in summary.records[0].skipped


def test_hunt_default_threshold_no_findings():
    spec = parse_pair_spec("paths:2-4 x paths:2-4")
    report = hunt_conjecture((1, 2), spec, options())
    assert report.findings == []
    assert report.closest
    assert report.closest[0]["ratio_num"] == 1 and report.closest[0]["ratio_den"] == 2


def test_hunt_threshold_one_flags_instances():
    spec = parse_pair_spec("paths:2-4 x paths:2-4")
    report = hunt_conjecture((1, 1), spec, options())
    assert report.findings  # plenty of ratios sit below 1
    assert all(f["kind"] == "conjecture_counterexample" for f in report.findings)


def test_hunt_threshold_third_guaranteed_empty():
    spec = parse_pair_spec("paths:2-5 x cycles:3-5")
    report = hunt_conjecture((1, 3), spec, options())
    assert report.findings == []


def test_hunt_closest_k_limit():
    spec = parse_pair_spec("paths:2-5 x paths:2-5")
    summary = scan(spec, options())
    report = hunt_from_records(summary.records, (1, 2), closest_k=3)
    assert len(report.closest) == 3


def test_summarize_counts():
    spec = parse_pair_spec("paths:2-3 x paths:2-3")
    summary = scan(spec, options())
    again = summarize(summary.records)
    assert again.total == summary.total
    assert again.check_pass_counts == summary.check_pass_counts


def test_record_round_trip_dict():
    record = verify_pair(generate("path", 3), generate("cycle", 3), options())
    assert InstanceRecord.from_json_dict(record.to_json_dict()) == record
