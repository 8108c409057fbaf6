"""Programmatic uvicorn servers for the serve command and the test suite."""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass

import uvicorn

from chatmon.chatbot.app import create_chatbot_app
from chatmon.chatbot.engine import HttpGateway, NullGateway
from chatmon.chatbot.scenario import Scenario
from chatmon.service.app import create_monitor_app, load_spec_dir
from chatmon.service.sessions import LEVEL_NONE, SessionManager
from chatmon.trace import parse_file


@dataclass
class RunningServer:
    server: uvicorn.Server
    thread: threading.Thread
    host: str
    port: int

    @property
    def url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def stop(self) -> None:
        self.server.should_exit = True
        self.thread.join(timeout=10)


def start_server(app, host: str = "127.0.0.1", port: int = 0) -> RunningServer:
    config = uvicorn.Config(app, host=host, port=port, log_level="warning", lifespan="off")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 15
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError(f"server on {host}:{port} did not start in time")
        if not thread.is_alive():
            raise RuntimeError(f"server on {host}:{port} exited during startup")
        time.sleep(0.01)
    actual_port = server.servers[0].sockets[0].getsockname()[1]
    return RunningServer(server, thread, host, actual_port)


@dataclass
class Stack:
    """A chatbot server plus (optionally) its monitor server."""

    level: str
    chatbot: RunningServer
    monitor: RunningServer = None

    @property
    def chatbot_url(self) -> str:
        return self.chatbot.url

    @property
    def monitor_url(self) -> str:
        return self.monitor.url if self.monitor else ""

    def stop(self) -> None:
        self.chatbot.stop()
        if self.monitor:
            self.monitor.stop()


def specs_for_scenario(scenario: Scenario) -> dict:
    return {name: parse_file(path)
            for name, path in zip(scenario.property_names(), scenario.property_paths)}


def start_stack(
    scenario: Scenario,
    level: str,
    monitor_host: str = "127.0.0.1",
    monitor_port: int = 0,
    chatbot_host: str = "127.0.0.1",
    chatbot_port: int = 0,
    alternative_cap: int = 10_000,
    session_log_dir=None,
    extra_specs: dict = None,
    ui_dir=None,
) -> Stack:
    """Starts the chatbot and, unless level is none, the monitor service."""
    monitor = None
    if level == LEVEL_NONE:
        gateway_factory = NullGateway
    else:
        specs = specs_for_scenario(scenario)
        specs.update(extra_specs or {})
        manager = SessionManager(
            specs, level=level, alternative_cap=alternative_cap, log_dir=session_log_dir
        )
        monitor = start_server(create_monitor_app(manager), monitor_host, monitor_port)
        monitor_url = monitor.url
        gateway_factory = lambda: HttpGateway(monitor_url)  # noqa: E731
    chatbot = start_server(
        create_chatbot_app(scenario, gateway_factory, monitor_level=level, ui_dir=ui_dir),
        chatbot_host,
        chatbot_port,
    )
    return Stack(level=level, chatbot=chatbot, monitor=monitor)


__all__ = ["RunningServer", "Stack", "start_server", "start_stack", "specs_for_scenario", "load_spec_dir"]
