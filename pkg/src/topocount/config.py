"""Run configuration: defaults, optional JSON file, command-line overrides."""
from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

from .evaluator import FOL_CAP, MSO_CAP
from .structures import DEFAULT_ENUMERATION_CAP

CONFIG_ENV = "TOPOCOUNT_CONFIG"
FORMATS = ("json", "csv", "plain")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    enum_cap: int = DEFAULT_ENUMERATION_CAP
    fol_cap: int = FOL_CAP
    mso_cap: int = MSO_CAP
    jobs: int = 1
    cache: str | None = None
    format: str = "json"

    def __post_init__(self):
        for name in ("enum_cap", "fol_cap", "mso_cap"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ConfigError(f"{name} must be a non-negative integer, got {v!r}")
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")

    def updated(self, **changes) -> "Config":
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})


def load_config(path: str | None = None) -> Config:
    """Config from ``path``, else from $TOPOCOUNT_CONFIG, else the defaults."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    known = {f.name for f in dataclasses.fields(Config)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config keys in {path}: {', '.join(unknown)}")
    return Config(**data)
