"""Family-spec parsing and JSONL/CSV persistence.

The scan grammar is shell-friendly: factor tokens like ``path:3`` or
``paths:2-5`` (singular and plural both accepted), comma-separated on each
side of an ``x`` pair separator.  Random families and graph6 files need the
JSON spec form, which carries seeds.  JSONL files start with a schema/version
header line; every record line parses back to an equal record.
"""

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .graph6 import emit_graph6, parse_graph6
from .graphs import generate
from .harness import REPLAY_CHECKS, InstanceRecord

SCHEMA_VERSION = 1

_FAMILY_NAMES = {
    "path": "path",
    "paths": "path",
    "cycle": "cycle",
    "cycles": "cycle",
    "complete": "complete",
    "completes": "complete",
    "star": "star",
    "stars": "star",
}


class FamilySpecError(ValueError):
    """Malformed family descriptor or spec file."""


@dataclass(frozen=True)
class FamilySpec:
    """Resolved factor descriptors: (id, graph6) pairs for each side."""

    left: tuple[tuple[str, str], ...]
    right: tuple[tuple[str, str], ...]


def _resolve_family(name: str, lo: int, hi: int) -> list[tuple[str, str]]:
    if hi < lo:
        raise FamilySpecError(f"empty range {lo}-{hi} for family {name}")
    out = []
    for n in range(lo, hi + 1):
        try:
            graph = generate(name, n)
        except ValueError as exc:
            raise FamilySpecError(str(exc)) from None
        out.append((f"{name}:{n}", emit_graph6(graph)))
    return out


def parse_factor_token(token: str) -> list[tuple[str, str]]:
    """One token: ``name:n``, ``name:lo-hi``, or ``g6:<graph6>``."""
    token = token.strip()
    if not token:
        raise FamilySpecError("empty factor token")
    if token.startswith("g6:"):
        text = token[3:]
        graph = parse_graph6(text)
        return [(f"g6:{emit_graph6(graph)}", emit_graph6(graph))]
    if ":" not in token:
        raise FamilySpecError(f"factor token {token!r} needs name:range")
    name, _, spec = token.partition(":")
    family = _FAMILY_NAMES.get(name.lower())
    if family is None:
        raise FamilySpecError(f"unknown family {name!r} in token {token!r}")
    lo, sep, hi = spec.partition("-")
    try:
        lo_n = int(lo)
        hi_n = int(hi) if sep else lo_n
    except ValueError:
        raise FamilySpecError(f"bad range in token {token!r}") from None
    return _resolve_family(family, lo_n, hi_n)


def _resolve_side(text: str) -> tuple[tuple[str, str], ...]:
    entries = []
    for token in text.split(","):
        entries.extend(parse_factor_token(token))
    if not entries:
        raise FamilySpecError("factor side resolved to no graphs")
    return tuple(entries)


def parse_pair_spec(text: str) -> FamilySpec:
    """Grammar: ``LEFT x RIGHT``; a lone side scans against itself."""
    parts = text.split(" x ")
    if len(parts) == 1:
        side = _resolve_side(parts[0])
        return FamilySpec(left=side, right=side)
    if len(parts) != 2:
        raise FamilySpecError(f"spec {text!r} must have exactly one ' x ' separator")
    return FamilySpec(left=_resolve_side(parts[0]), right=_resolve_side(parts[1]))


def _resolve_json_entry(entry: dict, base: Path) -> list[tuple[str, str]]:
    if "graph6_file" in entry:
        path = base / entry["graph6_file"]
        try:
            lines = [ln for ln in path.read_text().splitlines() if ln.strip()]
        except OSError as exc:
            raise FamilySpecError(f"cannot read graph6 file: {exc}") from None
        if not lines:
            raise FamilySpecError(f"graph6 file {path} holds no graphs")
        return [
            (f"file:{path.name}:{i + 1}", emit_graph6(parse_graph6(ln)))
            for i, ln in enumerate(lines)
        ]
    if "graph6" in entry:
        graph6 = emit_graph6(parse_graph6(entry["graph6"]))
        return [(f"g6:{graph6}", graph6)]
    if "family" not in entry:
        raise FamilySpecError(f"spec entry {entry} names neither family nor graph6")
    family = _FAMILY_NAMES.get(str(entry["family"]).lower())
    if family is None:
        raise FamilySpecError(f"unknown family {entry['family']!r}")
    lo = int(entry.get("n_min", entry.get("n", 0)))
    hi = int(entry.get("n_max", entry.get("n", 0)))
    return _resolve_family(family, lo, hi)


def load_spec_json(path: str | Path) -> FamilySpec:
    """JSON spec: {"left": [entries], "right": [entries]}; entries may be
    {"family","n"|"n_min"/"n_max"}, {"family":"random","n","p","seed"},
    {"graph6": str}, or {"graph6_file": path relative to the spec file}."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FamilySpecError(f"cannot load spec file: {exc}") from None
    base = path.parent

    def resolve_entries(entries) -> tuple[tuple[str, str], ...]:
        out = []
        for entry in entries:
            if str(entry.get("family", "")).lower() == "random":
                n_lo = int(entry.get("n_min", entry.get("n", 0)))
                n_hi = int(entry.get("n_max", entry.get("n", 0)))
                p = float(entry["p"])
                seed = int(entry["seed"])
                for n in range(n_lo, n_hi + 1):
                    graph = generate("random", n, p=p, seed=seed)
                    out.append(
                        (f"random:{n}:p{p}:s{seed}", emit_graph6(graph))
                    )
            else:
                out.extend(_resolve_json_entry(entry, base))
        if not out:
            raise FamilySpecError("spec side resolved to no graphs")
        return tuple(out)

    if "left" not in data or "right" not in data:
        raise FamilySpecError('JSON spec needs "left" and "right" entry lists')
    return FamilySpec(
        left=resolve_entries(data["left"]),
        right=resolve_entries(data["right"]),
    )


def _header() -> dict:
    return {"schema_version": SCHEMA_VERSION, "tool": "semitotal", "tool_version": __version__}


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def write_jsonl(path: str | Path, records: list[InstanceRecord]) -> None:
    lines = [_dump(_header())]
    lines.extend(_dump(r.to_json_dict()) for r in records)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_jsonl(path: str | Path) -> tuple[dict, list[InstanceRecord]]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty record file")
    header = json.loads(lines[0])
    if header.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"{path}: unsupported schema version {header.get('schema_version')}")
    records = [InstanceRecord.from_json_dict(json.loads(line)) for line in lines[1:]]
    return header, records


def comparison_form(path: str | Path) -> bytes:
    """Byte form of a JSONL file with the timing fields dropped, for
    determinism comparisons."""
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        obj = json.loads(line)
        obj.pop("timing", None)
        out.append(_dump(obj))
    return ("\n".join(out) + "\n").encode("utf-8")


CSV_COLUMNS = (
    "id",
    "n_G",
    "n_H",
    "gamma_t2_G",
    "gamma_t2_H",
    "rho_G",
    "gamma_t2_prod",
    "bound_thm1",
    "bound_thm2",
    "ratio_num",
    "ratio_den",
    "replay_pi_valid",
    "replay_claim1",
    "replay_claim2",
    "replay_eq1",
    "replay_eq2",
    "replay_eq3",
)


def _csv_rows(records: list[InstanceRecord]):
    for r in records:
        row = [
            r.id,
            r.n_g,
            r.n_h,
            r.gamma_t2_g,
            r.gamma_t2_h,
            r.rho_g,
            r.gamma_t2_prod,
            r.bound_thm1,
            r.bound_thm2,
            r.ratio_num,
            r.ratio_den,
        ]
        row = ["" if x is None else x for x in row]
        row.extend(r.replay.get(c, "skipped") for c in REPLAY_CHECKS)
        yield row


def write_csv(path: str | Path, records: list[InstanceRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        writer.writerows(_csv_rows(records))


def render_csv_report(path: str | Path) -> str:
    """Aligned text table of a scan CSV, with min ratio and finding counts."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        rows = list(reader)
    if not rows or rows[0] != list(CSV_COLUMNS):
        raise ValueError(f"{path}: not a scan summary CSV")
    body = rows[1:]
    widths = [len(c) for c in CSV_COLUMNS]
    for row in body:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(c.ljust(w) for c, w in zip(CSV_COLUMNS, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    min_ratio = None
    min_id = None
    fail_counts = {c: 0 for c in REPLAY_CHECKS}
    bound_violations = 0
    for row in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        data = dict(zip(CSV_COLUMNS, row))
        if data["ratio_num"]:
            ratio = Fraction(int(data["ratio_num"]), int(data["ratio_den"]))
            if min_ratio is None or ratio < min_ratio:
                min_ratio, min_id = ratio, data["id"]
            if data["gamma_t2_prod"] and (
                int(data["gamma_t2_prod"]) < int(data["bound_thm1"])
                or int(data["gamma_t2_prod"]) < int(data["bound_thm2"])
            ):
                bound_violations += 1
        for check in REPLAY_CHECKS:
            if data[f"replay_{check}"] == "fail":
                fail_counts[check] += 1
    lines.append("")
    lines.append(f"rows: {len(body)}")
    if min_ratio is not None:
        lines.append(f"min ratio: {min_ratio.numerator}/{min_ratio.denominator} at {min_id}")
    lines.append(f"bound violations: {bound_violations}")
    fails = ", ".join(f"{c}={fail_counts[c]}" for c in REPLAY_CHECKS)
    lines.append(f"replay failures: {fails}")
    return "\n".join(lines)
