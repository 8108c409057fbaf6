"""Operator entry points: serve, chat, batch replay with timing, reports."""

from chatmon.harness.bench import (
    BenchRecord,
    write_iteration_csv,
    read_iteration_csv,
    summarize,
    build_report,
    ReportError,
)

__all__ = [
    "BenchRecord",
    "write_iteration_csv",
    "read_iteration_csv",
    "summarize",
    "build_report",
    "ReportError",
]
