"""Runtime limits, loaded from a ``key = value`` file.

The file path comes from ``--config`` or the ``COXTILE_CONFIG`` environment
variable; command-line flags override whatever the file says.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import UsageError

ENV_VAR = "COXTILE_CONFIG"


@dataclass(frozen=True)
class Config:
    group_size_cap: int = 1_000_000
    enumeration_cap: int = 10_000_000
    max_rank_a: int = 7
    max_rank_d: int = 6
    # minimum angle (radians) between a type-D edge and the horizontal
    steepness_threshold: float = math.pi / 3
    strict_d_geometry: bool = True

    def updated(self, **overrides) -> "Config":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


DEFAULT = Config()


def _coerce(name: str, raw: str):
    kind = {f.name: f.type for f in fields(Config)}[name]
    raw = raw.strip()
    try:
        if kind == "bool":
            if raw.lower() in ("1", "true", "yes", "on"):
                return True
            if raw.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if kind == "int":
            return int(raw.replace("_", ""))
        if raw.startswith("pi/"):
            return math.pi / float(raw[3:])
        return float(raw)
    except ValueError:
        raise UsageError(f"config key {name!r}: cannot parse {raw!r}") from None


def parse_config(text: str, base: Config = DEFAULT) -> Config:
    known = {f.name for f in fields(Config)}
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key=value")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in known:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        values[key] = _coerce(key, raw)
    return replace(base, **values)


def load_config(path: str | os.PathLike | None = None) -> Config:
    if path is None:
        path = os.environ.get(ENV_VAR)
    if not path:
        return DEFAULT
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)
