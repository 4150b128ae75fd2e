"""Family scan with the 1/2-threshold ratio hunt.

Scans every ordered pair of small paths, cycles, completes and stars,
writes the JSONL record file and the CSV summary next to this script's
working directory, and reports the instances whose ratio

    gamma_t2(G x H) / (gamma_t2(G) * gamma_t2(H))

comes closest to 1/2 from above.  A ratio strictly below 1/2 would be a
counterexample to the conjectured half bound; none is known, and the scan
returns none.  The minimum observed ratio is exactly 1/2, attained already
by the product of two single edges.
"""

from semitotal import ScanOptions, hunt_from_records, scan
from semitotal.io import parse_pair_spec, render_csv_report


def main():
    spec = parse_pair_spec("paths:2-6,cycles:3-6,completes:2-4,stars:3-5")
    options = ScanOptions(
        replay=True,
        out_jsonl="scan_records.jsonl",
        out_csv="scan_summary.csv",
    )
    summary = scan(spec, options)
    print(summary.render())
    print()

    hunt = hunt_from_records(summary.records, threshold=(1, 2), closest_k=10)
    print(hunt.render())
    print()

    print("wrote scan_records.jsonl and scan_summary.csv")
    print("tail of the rendered report:")
    report = render_csv_report("scan_summary.csv")
    for line in report.splitlines()[-5:]:
        print(f"  {line}")


if __name__ == "__main__":
    main()
