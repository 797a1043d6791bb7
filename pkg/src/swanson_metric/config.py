"""Run configuration shared by every CLI command.

Config files are flat ``key = value`` text with ``#`` comments.  Keys use the
field names below; command-line flags override whatever the file sets.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .closed_forms import Branch


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    omega: float = 1.0
    alpha: float = 0.5
    beta: float = 0.25
    z_min: float = -1.0
    z_max: float = 1.0
    steps: int = 41
    branch: Branch = Branch.STANDARD
    dim: int = 64
    sector: int | None = None  # None -> dim // 4
    out: str = "-"
    format: str = "csv"

    def __post_init__(self):
        if not -1.0 <= self.z_min <= self.z_max <= 1.0:
            raise ConfigError(f"need -1 <= z_min <= z_max <= 1, got z_min={self.z_min}, z_max={self.z_max}")
        if self.steps < 1:
            raise ConfigError(f"steps must be >= 1, got {self.steps}")
        if self.dim < 2:
            raise ConfigError(f"dim must be >= 2, got {self.dim}")
        if self.sector is not None and not 1 <= self.sector <= self.dim // 2:
            raise ConfigError(f"sector must lie in [1, dim/2] = [1, {self.dim // 2}], got {self.sector}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")

    @property
    def effective_sector(self) -> int:
        return self.sector if self.sector is not None else max(self.dim // 4, 1)


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}


def _convert(key: str, raw: str):
    raw = raw.strip()
    try:
        if key in ("omega", "alpha", "beta", "z_min", "z_max"):
            return float(raw)
        if key in ("steps", "dim", "sector"):
            return int(raw)
        if key == "branch":
            return Branch.parse(raw)
        if key == "format":
            return raw.lower()
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from None


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse key=value lines into a dict of converted values."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key = value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FIELDS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        out[key] = _convert(key, value)
    return out


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    return parse_config_text(text, path)


def build_config(file_values: dict | None = None, overrides: dict | None = None) -> RunConfig:
    """File values first, then non-None overrides (the flags)."""
    values = dict(file_values or {})
    for k, v in (overrides or {}).items():
        if v is not None:
            values[k] = _convert(k, str(v)) if isinstance(v, str) and k != "out" else v
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
