"""The monitor as a session-oriented network service."""

from chatmon.service.config import load_config, config_get, config_get_all, config_get_int
from chatmon.service.sessions import (
    Session,
    SessionManager,
    UnknownSession,
    UnknownSpec,
    SessionErrored,
    LEVEL_REAL,
    LEVEL_DUMMY,
    LEVEL_NONE,
)
from chatmon.service.app import create_monitor_app, load_spec_dir

__all__ = [
    "load_config",
    "config_get",
    "config_get_all",
    "config_get_int",
    "Session",
    "SessionManager",
    "UnknownSession",
    "UnknownSpec",
    "SessionErrored",
    "LEVEL_REAL",
    "LEVEL_DUMMY",
    "LEVEL_NONE",
    "create_monitor_app",
    "load_spec_dir",
]
