"""Run configuration: defaults, config-file parsing, validation.

Configuration comes from an optional flat key-value file (one ``key = value``
per line, ``#`` comments) merged with command-line flags; flags win.  The
file path can be given explicitly or through the ``OSCTORUS_CONFIG``
environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

__all__ = [
    "ConfigError",
    "RunConfig",
    "parse_config_file",
    "parse_tolerance_flags",
    "load_config",
    "CONFIG_ENV_VAR",
    "MAX_COEFFICIENTS",
    "GAUGE_CHOICES",
]

CONFIG_ENV_VAR = "OSCTORUS_CONFIG"
GAUGE_CHOICES = ("identity", "random")

# Guard against accidental huge assemblies: coefficients counted over
# (truncation level) x (vertices) x (total wedge dimension).
MAX_COEFFICIENTS = 1_000_000
_WEDGE_TOTAL = 4


class ConfigError(ValueError):
    """Invalid configuration input."""


@dataclass
class RunConfig:
    n: int = 6
    grid: int = 8
    seed: int = 42
    gauge: str = "identity"
    out: str | None = None
    tolerances: dict[str, float] = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.n < 2:
            raise ConfigError(f"truncation level must be >= 2, got {self.n}")
        if self.grid < 2:
            raise ConfigError(f"grid size must be >= 2, got {self.grid}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if self.gauge not in GAUGE_CHOICES:
            raise ConfigError(
                f"gauge must be one of {GAUGE_CHOICES}, got {self.gauge!r}")
        for name, value in self.tolerances.items():
            if not value > 0.0:
                raise ConfigError(f"tolerance {name!r} must be positive, got {value}")
        load = self.n * self.grid ** 2 * _WEDGE_TOTAL
        if load > MAX_COEFFICIENTS:
            raise ConfigError(
                f"requested {load} coefficients exceeds the memory guard "
                f"({MAX_COEFFICIENTS}); lower n or grid")
        return self

    def tolerance(self, name: str, default: float) -> float:
        return self.tolerances.get(name, default)


_INT_KEYS = ("n", "grid", "seed")
_STR_KEYS = ("gauge", "out")


def parse_config_file(path: str | Path) -> dict:
    """Read a flat key-value file into keyword arguments for RunConfig."""
    out: dict = {"tolerances": {}}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in _INT_KEYS:
            try:
                out[key] = int(value)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: {key} must be an integer") from None
        elif key in _STR_KEYS:
            out[key] = value
        elif key.startswith("tol."):
            name = key[len("tol."):]
            try:
                out["tolerances"][name] = float(value)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: tolerance must be a number") from None
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return out


def parse_tolerance_flags(pairs: tuple[str, ...]) -> dict[str, float]:
    """Parse repeated ``name=value`` tolerance flags."""
    out: dict[str, float] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"tolerance flag {pair!r} must look like name=value")
        name, _, value = pair.partition("=")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"tolerance flag {pair!r} has a non-numeric value") from None
    return out


def load_config(config_path: str | None = None,
                environ: Mapping[str, str] | None = None,
                **flags) -> RunConfig:
    """Merge config file (explicit path, else environment) with flag overrides.

    ``flags`` may contain n, grid, seed, gauge, out and tolerances; values of
    None mean "not given on the command line".
    """
    environ = os.environ if environ is None else environ
    path = config_path or environ.get(CONFIG_ENV_VAR)
    merged: dict = {"tolerances": {}}
    if path:
        merged.update(parse_config_file(path))
    tol = dict(merged.get("tolerances", {}))
    tol.update(flags.pop("tolerances", None) or {})
    for key, value in flags.items():
        if value is not None:
            merged[key] = value
    merged["tolerances"] = tol
    return RunConfig(**merged).validate()
