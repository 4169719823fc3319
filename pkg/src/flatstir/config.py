"""Configuration resolution for the CLI.

Precedence: command-line flags > environment variables > config file >
built-in defaults.  The config file is flat "key = value" text; '#' starts
a comment.  Recognized keys: budget, truncation_order, oeis_timeout,
cache_dir.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import FlatstirError
from .oeis import default_cache_dir

ENV_PREFIX = "FLATSTIR_"
_KEYS = ("budget", "truncation_order", "oeis_timeout", "cache_dir")


class ConfigError(FlatstirError, ValueError):
    pass


@dataclass
class Config:
    budget: int = 10**8
    truncation_order: int = 32
    oeis_timeout: float = 10.0
    cache_dir: str = ""

    def __post_init__(self):
        if not self.cache_dir:
            self.cache_dir = default_cache_dir()


def load_config(path: str | None = None, env: dict[str, str] | None = None) -> Config:
    """Resolve environment and file layers; flags are applied by the CLI."""
    env = os.environ if env is None else env
    cfg = Config()
    file_path = path or env.get(ENV_PREFIX + "CONFIG")
    if file_path is None:
        default_path = os.path.join(
            env.get("XDG_CONFIG_HOME", os.path.join(os.path.expanduser("~"), ".config")),
            "flatstir.conf",
        )
        if os.path.exists(default_path):
            file_path = default_path
    if file_path is not None:
        _apply_file(cfg, file_path)
    _apply_env(cfg, env)
    return cfg


def _apply_file(cfg: Config, path: str) -> None:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        _set(cfg, key.strip(), value.strip(), f"{path}:{lineno}")
    return None


def _apply_env(cfg: Config, env: dict[str, str]) -> None:
    for key in _KEYS:
        value = env.get(ENV_PREFIX + key.upper())
        if value is not None:
            _set(cfg, key, value, f"environment {ENV_PREFIX + key.upper()}")


def _set(cfg: Config, key: str, value: str, where: str) -> None:
    if key not in _KEYS:
        raise ConfigError(f"{where}: unknown config key {key!r}")
    try:
        if key == "budget":
            cfg.budget = int(value)
        elif key == "truncation_order":
            cfg.truncation_order = int(value)
        elif key == "oeis_timeout":
            cfg.oeis_timeout = float(value)
        else:
            cfg.cache_dir = value
    except ValueError:
        raise ConfigError(f"{where}: bad value {value!r} for {key}") from None
