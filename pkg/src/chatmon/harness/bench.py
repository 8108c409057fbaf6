"""Latency records, per-iteration CSV files, and the level-comparison report.

CSV schema: ``iteration,message_index,utterance,latency_ms,verdict`` -- one
file per iteration, grouped in one directory per monitoring level.  The
report compares per-message-index medians across levels and emits a
plot-ready TSV.
"""

from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass, field
from pathlib import Path

CSV_FIELDS = ("iteration", "message_index", "utterance", "latency_ms", "verdict")

LEVELS = ("none", "dummy", "real")


class ReportError(ValueError):
    pass


@dataclass
class BenchRecord:
    platform: str
    level: str
    iteration: int
    utterances: list = field(default_factory=list)
    latencies_ms: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)

    def message_count(self) -> int:
        return len(self.latencies_ms)


def write_iteration_csv(directory, record: BenchRecord) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"iteration_{record.iteration:03d}.csv"
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_FIELDS)
        for index, (utterance, latency, verdict) in enumerate(
            zip(record.utterances, record.latencies_ms, record.verdicts), start=1
        ):
            writer.writerow([record.iteration, index, utterance, f"{latency:.3f}", verdict])
    return path


def read_iteration_csv(path) -> BenchRecord:
    path = Path(path)
    record = BenchRecord(platform="", level=path.parent.name, iteration=0)
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if tuple(reader.fieldnames or ()) != CSV_FIELDS:
            raise ReportError(f"{path}: unexpected CSV header {reader.fieldnames}")
        for row in reader:
            record.iteration = int(row["iteration"])
            record.utterances.append(row["utterance"])
            record.latencies_ms.append(float(row["latency_ms"]))
            record.verdicts.append(row["verdict"])
    return record


def _percentile(values, fraction: float) -> float:
    ordered = sorted(values)
    if not ordered:
        return float("nan")
    position = max(0, min(len(ordered) - 1, round(fraction * (len(ordered) - 1))))
    return ordered[position]


def summarize(records) -> dict:
    """Median/p95 per message index, plus overall medians with and without
    message 1 (the first message pays one-time initialization costs)."""
    records = list(records)
    if not records:
        return {"message_count": 0, "iterations": 0, "per_message": [],
                "overall_median_ms": None, "overall_median_excl_first_ms": None}
    count = records[0].message_count()
    for record in records:
        if record.message_count() != count:
            raise ReportError("iterations disagree on message count")
    per_message = []
    for index in range(count):
        values = [r.latencies_ms[index] for r in records]
        per_message.append(
            {
                "message_index": index + 1,
                "median_ms": statistics.median(values),
                "p95_ms": _percentile(values, 0.95),
            }
        )
    all_values = [v for r in records for v in r.latencies_ms]
    tail_values = [v for r in records for v in r.latencies_ms[1:]]
    return {
        "message_count": count,
        "iterations": len(records),
        "per_message": per_message,
        "overall_median_ms": statistics.median(all_values),
        "overall_median_excl_first_ms": statistics.median(tail_values) if tail_values else None,
    }


def load_level_records(directory) -> dict:
    """Reads ``<dir>/<level>/iteration_*.csv`` for every level present."""
    directory = Path(directory)
    found: dict = {}
    for level_dir in sorted(directory.iterdir()) if directory.is_dir() else []:
        if not level_dir.is_dir() or level_dir.name not in LEVELS:
            continue
        records = [read_iteration_csv(p) for p in sorted(level_dir.glob("iteration_*.csv"))]
        if records:
            found[level_dir.name] = records
    return found


def build_report(directory) -> dict:
    """Comparison table across levels with Real-None and Real-Dummy deltas."""
    by_level = load_level_records(directory)
    if len(by_level) < 2:
        raise ReportError(
            f"need CSVs from at least two levels under {directory}, found {sorted(by_level)}"
        )
    summaries = {level: summarize(records) for level, records in by_level.items()}
    counts = {s["message_count"] for s in summaries.values()}
    if len(counts) != 1:
        raise ReportError(f"levels disagree on message count: {counts}")
    message_count = counts.pop()
    rows = []
    for index in range(message_count):
        row = {"message_index": index + 1}
        for level, summary in summaries.items():
            row[f"median_{level}_ms"] = summary["per_message"][index]["median_ms"]
        if "real" in summaries and "none" in summaries:
            row["delta_real_none_ms"] = row["median_real_ms"] - row["median_none_ms"]
        if "real" in summaries and "dummy" in summaries:
            row["delta_real_dummy_ms"] = row["median_real_ms"] - row["median_dummy_ms"]
        rows.append(row)
    return {
        "levels": sorted(by_level),
        "message_count": message_count,
        "summaries": summaries,
        "rows": rows,
    }


def write_report_tsv(report: dict, path) -> Path:
    path = Path(path)
    columns = list(report["rows"][0].keys()) if report["rows"] else ["message_index"]
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\t".join(columns) + "\n")
        for row in report["rows"]:
            handle.write(
                "\t".join(
                    f"{row[c]:.3f}" if isinstance(row[c], float) else str(row[c])
                    for c in columns
                )
                + "\n"
            )
    return path


def format_report(report: dict) -> str:
    lines = []
    columns = list(report["rows"][0].keys()) if report["rows"] else []
    header = "  ".join(f"{c:>20s}" for c in columns)
    lines.append(header)
    for row in report["rows"]:
        lines.append(
            "  ".join(
                f"{row[c]:>20.3f}" if isinstance(row[c], float) else f"{row[c]:>20d}"
                for c in columns
            )
        )
    for level in report["levels"]:
        summary = report["summaries"][level]
        tail = summary["overall_median_excl_first_ms"]
        tail_text = f"{tail:.3f} ms" if tail is not None else "n/a (single message)"
        lines.append(
            f"{level}: overall median {summary['overall_median_ms']:.3f} ms; "
            f"excluding message 1 {tail_text}"
        )
    return "\n".join(lines)
