"""Run configuration: builtin defaults, overridden by a flat key = value
config file, overridden by command-line flags (flags win)."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Optional, Tuple

from .errors import ConfigError

SCENARIO_CHOICES = ("constant", "oscillatory", "powerlaw", "exponential")


@dataclass
class RunConfig:
    scenario: str = "exponential"
    gamma_over_hbar: float = 0.5 * math.pi
    lam: float = 1.0
    omega0: float = -2.0
    theta0: float = 0.0
    thetadot0: float = 1.0
    xi0: float = 0.0
    t_max: float = 10.0
    theta_max: float = 5.0
    xi_max: Optional[float] = None  # None: full validity domain (capped at xi0+10)
    dt: float = 1e-4
    dxi: float = 1e-4
    h_step: Optional[float] = None
    samples: int = 501
    grid: str = "512x512"
    record_every: int = 100
    normalization: str = "fs"
    format: str = "csv"
    out: Optional[str] = None
    tolerance: Optional[float] = None  # None: per-command default
    precision: int = 12
    allow_off_resonance: bool = False
    form: str = "exact"

    def validate(self) -> "RunConfig":
        if self.scenario not in SCENARIO_CHOICES:
            raise ConfigError(f"scenario must be one of {SCENARIO_CHOICES}")
        if self.normalization not in ("fs", "raw"):
            raise ConfigError("normalization must be 'fs' or 'raw'")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be 'csv' or 'json'")
        if self.form not in ("exact", "alternate"):
            raise ConfigError("form must be 'exact' or 'alternate'")
        if self.gamma_over_hbar <= 0.0:
            raise ConfigError("gamma-over-hbar must be positive")
        if self.lam <= 0.0:
            raise ConfigError("lambda must be positive")
        if self.omega0 >= 0.0:
            raise ConfigError("omega0 must be negative")
        for name in ("dt", "dxi", "thetadot0"):
            if getattr(self, name) <= 0.0:
                raise ConfigError(f"{name} must be positive")
        if self.h_step is not None and self.h_step <= 0.0:
            raise ConfigError("h-step must be positive")
        if self.t_max < 0.0:
            raise ConfigError("t-max must be nonnegative")
        if self.theta_max <= 0.0 or self.theta0 < 0.0 or self.samples < 1:
            raise ConfigError("need theta-max > 0, theta0 >= 0, samples >= 1")
        if self.xi_max is not None and self.xi_max <= self.xi0:
            raise ConfigError("xi-max must exceed xi0")
        if self.record_every < 1:
            raise ConfigError("record-every must be >= 1")
        if not 6 <= self.precision <= 17:
            raise ConfigError("precision must lie in [6, 17]")
        if self.tolerance is not None and self.tolerance <= 0.0:
            raise ConfigError("tolerance must be positive")
        self.grid_shape()
        return self

    def grid_shape(self) -> Tuple[int, int]:
        try:
            r, c = self.grid.lower().split("x")
            shape = (int(r), int(c))
        except ValueError as exc:
            raise ConfigError("grid must look like '512x512'") from exc
        if min(shape) < 2:
            raise ConfigError("grid dimensions must be >= 2")
        return shape


_BOOL_WORDS = {"1": True, "true": True, "yes": True, "0": False, "false": False, "no": False}


def _coerce(name: str, text: str, target_type):
    text = text.strip()
    if target_type is bool:
        try:
            return _BOOL_WORDS[text.lower()]
        except KeyError as exc:
            raise ConfigError(f"config key {name}: not a boolean: {text!r}") from exc
    try:
        return target_type(text)
    except ValueError as exc:
        raise ConfigError(f"config key {name}: cannot parse {text!r}") from exc


def load_config_file(path: str) -> dict:
    """Parse a flat 'key = value' file ('#' starts a comment)."""
    field_types = {}
    for f in fields(RunConfig):
        t = f.type
        if t.startswith("Optional["):
            t = t[len("Optional[") : -1]
        field_types[f.name] = {"float": float, "int": int, "str": str, "bool": bool}[t]

    values = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
                key, text = (part.strip() for part in line.split("=", 1))
                key = key.replace("-", "_")
                if key == "lambda":
                    key = "lam"
                if key not in field_types:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
                values[key] = _coerce(key, text, field_types[key])
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return values


def resolve_config(cli_overrides: dict, config_path: Optional[str]) -> RunConfig:
    """Builtin defaults <- config file <- CLI flags, then validated."""
    cfg = RunConfig()
    if config_path is not None:
        for key, value in load_config_file(config_path).items():
            setattr(cfg, key, value)
    for key, value in cli_overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    return cfg.validate()
