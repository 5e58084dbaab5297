"""Size limits. ``LATKIT_CAP`` overrides the isomorphism-search bound."""

from __future__ import annotations

import os
from dataclasses import dataclass, field


def _env_cap(default: int = 64) -> int:
    raw = os.environ.get("LATKIT_CAP")
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


@dataclass(frozen=True)
class Limits:
    search_cap: int = field(default_factory=_env_cap)
    construct_cap: int = 4096
    enumerate_cap: int = 8
    distributive_enumerate_cap: int = 16
    fd_generators_cap: int = 4


def limits() -> Limits:
    # read the environment on every call so tests and the CLI can override it
    return Limits()
