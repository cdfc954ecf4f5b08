"""Plain ``key = value`` configuration for moduli and budgets.

Lines starting with ``#`` are comments. Recognised keys::

    field.<q>.modulus = c_0, c_1, ..., c_m    # ascending, monic
    budget.distance_nodes = 50000000
    budget.enum_limit = 65536
    budget.search_candidates = 1000000
    workers = 1

The file path comes from ``--config`` or the ``SKEWCODES_CONFIG`` variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

ENV_VAR = "SKEWCODES_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    moduli: dict[int, tuple[int, ...]] = field(default_factory=dict)
    distance_nodes: int | None = 50_000_000
    enum_limit: int = 1 << 16
    search_candidates: int | None = 1_000_000
    workers: int = 1

    def modulus(self, q: int):
        return self.moduli.get(q)


_INT_KEYS = {
    "budget.distance_nodes": "distance_nodes",
    "budget.enum_limit": "enum_limit",
    "budget.search_candidates": "search_candidates",
    "workers": "workers",
}


def _parse_int(key: str, value: str, lineno: int) -> int | None:
    if value.lower() in ("none", "unlimited"):
        return None
    try:
        return int(value.replace("_", ""))
    except ValueError:
        raise ConfigError(f"line {lineno}: {key} expects an integer, got {value!r}") from None


def parse_config(text: str) -> Config:
    cfg = Config()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in _INT_KEYS:
            setattr(cfg, _INT_KEYS[key], _parse_int(key, value, lineno))
        elif key.startswith("field.") and key.endswith(".modulus"):
            q = key[len("field."):-len(".modulus")]
            if not q.isdigit():
                raise ConfigError(f"line {lineno}: bad field order in {key!r}")
            try:
                cfg.moduli[int(q)] = tuple(int(c) for c in value.split(","))
            except ValueError:
                raise ConfigError(f"line {lineno}: modulus must be comma-separated integers") from None
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    return cfg


def load_config(path: str | os.PathLike | None = None) -> Config:
    """Read ``path``, else $SKEWCODES_CONFIG, else built-in defaults."""
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return Config()
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file {p} not found")
    return parse_config(p.read_text())
