"""Flat key=value configuration files.

One ``key=value`` pair per line; ``#`` starts a comment; repeated keys
accumulate (used for property and template lists).  Values are uninterpreted
strings; use the typed getters.
"""

from __future__ import annotations


def load_config(path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())


def parse_config(text: str) -> dict:
    config: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if not key:
            raise ValueError(f"line {lineno}: empty key")
        config.setdefault(key, []).append(value.strip())
    return config


def config_get(config: dict, key: str, default=None):
    values = config.get(key)
    if not values:
        return default
    return values[-1]


def config_get_all(config: dict, key: str) -> list:
    return list(config.get(key, []))


def config_get_int(config: dict, key: str, default: int) -> int:
    value = config_get(config, key)
    return default if value is None else int(value)


def config_get_bool(config: dict, key: str, default: bool) -> bool:
    value = config_get(config, key)
    if value is None:
        return default
    return value.lower() in ("1", "true", "yes", "on")
