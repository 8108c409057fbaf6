"""The ``chatmon`` command line.

Subcommands::

    chatmon serve --config factory.cfg --monitor real
    chatmon chat --monitor real
    chatmon test --input conversation.txt --iterations 20 --monitor real --out bench/
    chatmon bench-report bench/

``serve`` starts the chatbot service and (unless the level is none) the
monitor service.  ``test`` replays an utterance file against a running stack,
one fresh conversation per iteration, and writes one latency CSV per
iteration.  ``bench-report`` compares the CSVs of two or more levels.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources
from pathlib import Path

import requests

from chatmon.chatbot.floor import render_snapshot
from chatmon.chatbot.scenario import load_scenario
from chatmon.harness import bench
from chatmon.harness.serving import start_stack
from chatmon.service.config import config_get, config_get_int, load_config

DEFAULT_CHATBOT_URL = "http://127.0.0.1:8600"
LEVELS = ("none", "dummy", "real")


def _packaged_config(name: str) -> Path:
    return Path(str(resources.files("chatmon") / "configs" / name))


def _split_listen(value: str, default_port: int) -> tuple:
    host, _, port = value.partition(":")
    return host or "127.0.0.1", int(port) if port else default_port


def _load_scenario(path_arg: str):
    path = Path(path_arg) if path_arg else _packaged_config("factory.cfg")
    if not path.exists():
        packaged = _packaged_config(path.name)
        if packaged.exists():
            path = packaged
        else:
            raise FileNotFoundError(f"scenario config not found: {path_arg}")
    return load_scenario(path), path


def resolve_spec_dir(value: str) -> Path:
    """Resolves a monitor spec directory: plain path or packaged subtree."""
    path = Path(value)
    if path.is_dir():
        return path
    packaged = Path(str(resources.files("chatmon") / value))
    if packaged.is_dir():
        return packaged
    raise FileNotFoundError(f"spec directory not found: {value}")


def cmd_serve(args) -> int:
    scenario, config_path = _load_scenario(args.config)
    config = load_config(config_path)
    monitor_config = load_config(args.monitor_config) if args.monitor_config else {}
    extra_specs = None
    if config_get(monitor_config, "spec_dir"):
        from chatmon.harness.serving import load_spec_dir

        extra_specs = load_spec_dir(resolve_spec_dir(config_get(monitor_config, "spec_dir")))
    monitor_listen = (
        args.monitor_listen
        or os.environ.get("CHATMON_MONITOR_LISTEN")
        or config_get(monitor_config, "listen")
        or config_get(config, "monitor.listen", "127.0.0.1:8700")
    )
    chatbot_listen = (
        args.chatbot_listen
        or os.environ.get("CHATMON_CHATBOT_LISTEN")
        or config_get(config, "chatbot.listen", "127.0.0.1:8600")
    )
    monitor_host, monitor_port = _split_listen(monitor_listen, 8700)
    chatbot_host, chatbot_port = _split_listen(chatbot_listen, 8600)
    alternative_cap = config_get_int(
        monitor_config, "alternative_cap", config_get_int(config, "alternative_cap", 10_000)
    )
    ui_dir = args.ui if args.ui and Path(args.ui).is_dir() else None
    try:
        stack = start_stack(
            scenario,
            args.monitor,
            monitor_host=monitor_host,
            monitor_port=monitor_port,
            chatbot_host=chatbot_host,
            chatbot_port=chatbot_port,
            alternative_cap=alternative_cap,
            session_log_dir=config_get(monitor_config, "session_log_dir")
            or config_get(config, "session_log_dir"),
            extra_specs=extra_specs,
            ui_dir=ui_dir,
        )
    except (RuntimeError, OSError) as exc:
        print(f"failed to start services: {exc}", file=sys.stderr)
        return 2
    if stack.monitor:
        print(f"monitor ({args.monitor}) listening on {stack.monitor_url}")
    else:
        print("monitor level none: no monitor service started")
    print(
        f"chatbot listening on {stack.chatbot_url} "
        f"(scenario {config_path.stem}; properties: {', '.join(scenario.property_names()) or 'none'})"
    )
    if ui_dir:
        print(f"web ui at {stack.chatbot_url}/ui/")
    print("press Ctrl-C to stop")
    try:
        while True:
            time.sleep(0.5)
    except KeyboardInterrupt:
        print("stopping")
    finally:
        stack.stop()
    return 0


def _check_level(session: requests.Session, url: str, level: str) -> None:
    response = session.get(f"{url}/health", timeout=5)
    response.raise_for_status()
    served = response.json().get("monitor_level")
    if served != level:
        raise RuntimeError(
            f"chatbot at {url} runs monitor level {served!r}, expected {level!r}"
        )


def run_test(
    input_path,
    iterations: int,
    level: str,
    out_dir,
    chatbot_url: str = DEFAULT_CHATBOT_URL,
    expect_violations: bool = False,
    quiet: bool = False,
) -> int:
    """Replays the utterance file; returns the process exit code."""
    lines = [l.strip() for l in Path(input_path).read_text(encoding="utf-8").splitlines() if l.strip()]
    if not lines:
        print("input file has no utterances", file=sys.stderr)
        return 2
    http = requests.Session()
    _check_level(http, chatbot_url, level)
    records = []
    errors = []
    first_false_indexes = []
    for iteration in range(iterations):
        record = bench.BenchRecord(platform="chatmon", level=level, iteration=iteration)
        try:
            created = http.post(f"{chatbot_url}/conversations", timeout=10)
            created.raise_for_status()
            conversation_id = created.json()["conversation_id"]
            for line in lines:
                started = time.perf_counter()
                response = http.post(
                    f"{chatbot_url}/conversations/{conversation_id}/messages",
                    json={"text": line},
                    timeout=30,
                )
                elapsed_ms = (time.perf_counter() - started) * 1000.0
                response.raise_for_status()
                body = response.json()
                record.utterances.append(line)
                record.latencies_ms.append(elapsed_ms)
                record.verdicts.append(body["message_verdict"])
        except requests.RequestException as exc:
            errors.append(f"iteration {iteration}: {exc}")
            continue
        records.append(record)
        bench.write_iteration_csv(Path(out_dir) / level, record)
        false_positions = [i + 1 for i, v in enumerate(record.verdicts) if v == "false"]
        first_false_indexes.append(false_positions[0] if false_positions else None)

    summary = bench.summarize(records) if records else {"per_message": [], "iterations": 0}
    summary["errors"] = errors
    summary["level"] = level
    summary["first_false_message"] = first_false_indexes
    out = Path(out_dir) / level / "summary.json"
    if records:
        out.write_text(json.dumps(summary, indent=2), encoding="utf-8")
    if not quiet:
        for row in summary.get("per_message", []):
            print(
                f"message {row['message_index']:2d}: median {row['median_ms']:.2f} ms, "
                f"p95 {row['p95_ms']:.2f} ms"
            )
        if errors:
            print(f"{len(errors)} iteration(s) aborted:", *errors, sep="\n  ")

    if iterations == 0:
        return 0
    if errors and not records:
        return 1
    if expect_violations:
        ok = all(i is not None for i in first_false_indexes) and len(set(first_false_indexes)) == 1
        if not quiet:
            position = first_false_indexes[0] if first_false_indexes else None
            print(f"expected violation {'found at message ' + str(position) if ok else 'NOT reproduced'}")
        return 0 if ok and records else 1
    unexpected = any(i is not None for i in first_false_indexes)
    if unexpected and not quiet:
        print("unexpected false verdict(s) in:", first_false_indexes)
    return 1 if unexpected or errors else 0


def cmd_test(args) -> int:
    try:
        return run_test(
            args.input,
            args.iterations,
            args.monitor,
            args.out,
            chatbot_url=args.chatbot_url,
            expect_violations=args.expect_violations,
        )
    except (RuntimeError, requests.RequestException, OSError) as exc:
        print(f"test run failed: {exc}", file=sys.stderr)
        return 2


def cmd_chat(args) -> int:
    http = requests.Session()
    try:
        _check_level(http, args.chatbot_url, args.monitor)
        created = http.post(f"{args.chatbot_url}/conversations", timeout=10)
        created.raise_for_status()
        conversation_id = created.json()["conversation_id"]
    except (RuntimeError, requests.RequestException) as exc:
        print(f"cannot reach the chatbot: {exc}", file=sys.stderr)
        return 1
    print(f"connected ({args.monitor} monitoring); empty line or Ctrl-D to quit")
    while True:
        try:
            line = input("you> ").strip()
        except EOFError:
            print()
            return 0
        if not line:
            return 0
        try:
            response = http.post(
                f"{args.chatbot_url}/conversations/{conversation_id}/messages",
                json={"text": line},
                timeout=30,
            )
            response.raise_for_status()
        except requests.RequestException as exc:
            print(f"connection lost: {exc}", file=sys.stderr)
            return 1
        body = response.json()
        marker = "BLOCKED " if body["message_verdict"] == "false" else ""
        print(f"bot> {marker}{body['reply']}")
        if body["verdicts"]:
            shown = ", ".join(
                f"{v['property']}/{v['stage']}={v['verdict']}" for v in body["verdicts"]
            )
            print(f"     verdicts: {shown}")
        print(render_snapshot(body["floor"]))
    return 0


def cmd_bench_report(args) -> int:
    try:
        report = bench.build_report(args.directory)
    except bench.ReportError as exc:
        print(f"cannot build report: {exc}", file=sys.stderr)
        return 2
    print(bench.format_report(report))
    tsv = bench.write_report_tsv(report, Path(args.directory) / "report.tsv")
    print(f"plot-ready TSV written to {tsv}")
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chatmon", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="start the chatbot (and monitor) services")
    serve.add_argument("--config", default="", help="scenario config file (default: packaged factory.cfg)")
    serve.add_argument("--monitor", choices=LEVELS, default="real")
    serve.add_argument(
        "--monitor-config",
        default="",
        help="monitor service config (spec_dir, listen, alternative_cap, session_log_dir)",
    )
    serve.add_argument("--monitor-listen", default="", help="host:port override for the monitor")
    serve.add_argument("--chatbot-listen", default="", help="host:port override for the chatbot")
    serve.add_argument("--ui", default="frontend/dist", help="directory with the built web ui")
    serve.set_defaults(func=cmd_serve)

    test = sub.add_parser("test", help="replay an utterance file with timing")
    test.add_argument("--input", required=True)
    test.add_argument("--iterations", type=int, default=20)
    test.add_argument("--monitor", choices=LEVELS, required=True)
    test.add_argument("--out", required=True, help="output directory for per-iteration CSVs")
    test.add_argument("--chatbot-url", default=DEFAULT_CHATBOT_URL)
    test.add_argument("--expect-violations", action="store_true")
    test.set_defaults(func=cmd_test)

    chat = sub.add_parser("chat", help="interactive terminal chat")
    chat.add_argument("--monitor", choices=LEVELS, default="real")
    chat.add_argument("--chatbot-url", default=DEFAULT_CHATBOT_URL)
    chat.set_defaults(func=cmd_chat)

    report = sub.add_parser("bench-report", help="compare latency CSVs across levels")
    report.add_argument("directory")
    report.set_defaults(func=cmd_bench_report)
    return parser


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
